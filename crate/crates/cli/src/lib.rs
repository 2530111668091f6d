//! Command-line front end for `pantslab`.
//!
//! Output is JSON unless `--pretty` is given. Exit codes: 0 on success or a
//! verified certificate, 1 on a failed verdict or a computation error, 2 on
//! a usage error.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pantslab::{
    arc_vector, canonicalize, diophantine_enumerate, family_pair, gamma_word, self_intersection,
    selfint_formula, trace_polynomial, verify_pair, FamilyParams, LiftSearch, PairCertificate,
    ReducedWord, TwistTriple, Verdict,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

pub const MAX_RADIUS_ENV: &str = "PANTSLAB_MAX_RADIUS";

#[derive(Parser, Debug)]
#[command(
    name = "pantslab",
    version,
    about = "Exact curve combinatorics on a pair of pants"
)]
pub struct Cli {
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the word of γ(a,b,c)
    Word(TripleArgs),
    /// Self-intersection of γ(a,b,c), by formula and by computation
    Selfint(TripleArgs),
    /// Intersections of γ(a,b,c) with the six essential simple arcs
    Arcs(TripleArgs),
    /// Trace polynomial of a word in x, y (X, Y or ^-1 for inverses)
    Trace {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Certify the pair γ(a,b,c), γ(a',b',c')
    Pair {
        a1: u64,
        b1: u64,
        c1: u64,
        a2: u64,
        b2: u64,
        c2: u64,
    },
    /// Certify the family pair with parameters k, t
    Family { k: u64, t: u64 },
    /// List all pairs of triples with entries at most N solving both constraints
    Enumerate {
        #[arg(long = "max-a", value_name = "N")]
        max_a: u64,
    },
    /// Certify a grid of pairs
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct TripleArgs {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Inclusive range of k, as LO..HI (odd values are skipped)
    #[arg(
        long,
        value_name = "LO..HI",
        requires = "t_range",
        conflicts_with = "max_a"
    )]
    pub k_range: Option<String>,
    /// Inclusive range of t, as LO..HI (even values and t < 3 are skipped)
    #[arg(
        long,
        value_name = "LO..HI",
        requires = "k_range",
        conflicts_with = "max_a"
    )]
    pub t_range: Option<String>,
    /// Sweep every enumerated pair with entries at most N instead
    #[arg(long = "max-a", value_name = "N", required_unless_present = "k_range")]
    pub max_a: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the table here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

/// Where a sweep gets its pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepSpec {
    Family { k: (u64, u64), t: (u64, u64) },
    MaxA(u64),
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Failed(String),
}

impl From<pantslab::Error> for Failure {
    fn from(e: pantslab::Error) -> Self {
        use pantslab::Error::*;
        match e {
            Parse(_) | InvalidTriple(_) | InvalidFamily(_) | InvalidSearch(_) | TrivialClass
            | IdenticalTriples | IdenticalClasses | NotPrimitive | NotInterior(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Failed(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Failed(format!("i/o error: {e}"))
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn max_radius_override() -> std::result::Result<Option<usize>, Failure> {
    match std::env::var(MAX_RADIUS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&r| r > 0)
            .map(Some)
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "{MAX_RADIUS_ENV} must be a positive integer (got '{v}')"
                ))
            }),
        Err(_) => Ok(None),
    }
}

fn search_for(len: usize, max_radius: Option<usize>) -> LiftSearch {
    let s = LiftSearch::for_length(len);
    match max_radius {
        Some(r) => s.with_max_radius(r),
        None => s,
    }
}

fn pair_search(t1: TwistTriple, t2: TwistTriple, max_radius: Option<usize>) -> LiftSearch {
    let len = gamma_word(t1).len().max(gamma_word(t2).len());
    search_for(len, max_radius)
}

fn triple(a: u64, b: u64, c: u64) -> std::result::Result<TwistTriple, Failure> {
    Ok(TwistTriple::new(a, b, c)?)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string(value).map_err(io::Error::other)?
    )
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let max_radius = max_radius_override()?;
    let pretty = cli.pretty;
    match &cli.command {
        Command::Word(t) => {
            let t = triple(t.a, t.b, t.c)?;
            let w = gamma_word(t);
            if pretty {
                writeln!(out, "γ{t} = {w}  (length {})", w.len())?;
            } else {
                emit_json(
                    out,
                    &json!({"triple": t, "word": w.to_string(), "length": w.len()}),
                )?;
            }
            Ok(0)
        }
        Command::Selfint(t) => {
            let t = triple(t.a, t.b, t.c)?;
            let formula = selfint_formula(t);
            let computed = self_intersection(&canonicalize(&gamma_word(t)))?;
            if pretty {
                writeln!(out, "γ{t}: formula {formula}, computed {computed}")?;
            } else {
                emit_json(
                    out,
                    &json!({"triple": t, "formula": formula, "computed": computed}),
                )?;
            }
            Ok(0)
        }
        Command::Arcs(t) => {
            let t = triple(t.a, t.b, t.c)?;
            let cls = canonicalize(&gamma_word(t));
            let arcs = arc_vector(&cls, &search_for(cls.len(), max_radius))?;
            if pretty {
                writeln!(out, "γ{t}")?;
                for (arc, n) in arcs.iter() {
                    writeln!(out, "  {arc}  {n}")?;
                }
            } else {
                emit_json(out, &json!({"triple": t, "arcs": arcs}))?;
            }
            Ok(0)
        }
        Command::Trace { word } => {
            let w: ReducedWord = word.parse()?;
            let p = trace_polynomial(&w);
            if pretty {
                writeln!(
                    out,
                    "tr({}) = {p}",
                    if w.is_empty() {
                        "1".to_string()
                    } else {
                        w.to_string()
                    }
                )?;
            } else {
                emit_json(
                    out,
                    &json!({"word": w.to_string(), "polynomial": p.to_string(), "degree": p.total_degree()}),
                )?;
            }
            Ok(0)
        }
        Command::Pair {
            a1,
            b1,
            c1,
            a2,
            b2,
            c2,
        } => {
            let (t1, t2) = (triple(*a1, *b1, *c1)?, triple(*a2, *b2, *c2)?);
            let cert = verify_pair(t1, t2, &pair_search(t1, t2, max_radius))?;
            write_certificate(out, &cert, pretty)?;
            Ok(verdict_code(&cert.verdict))
        }
        Command::Family { k, t } => {
            let params = FamilyParams::new(*k, *t)?;
            let (t1, t2) = family_pair(params)?;
            let cert = verify_pair(t1, t2, &pair_search(t1, t2, max_radius))?;
            if pretty {
                writeln!(out, "family k = {k}, t = {t}")?;
                write_certificate(out, &cert, true)?;
            } else {
                emit_json(out, &json!({"k": k, "t": t, "certificate": cert}))?;
            }
            Ok(verdict_code(&cert.verdict))
        }
        Command::Enumerate { max_a } => {
            let pairs = diophantine_enumerate(*max_a)?;
            if pretty {
                for (u, v) in &pairs {
                    writeln!(out, "{u} {v}")?;
                }
                writeln!(out, "{} pairs", pairs.len())?;
            } else {
                emit_json(out, &pairs)?;
            }
            Ok(0)
        }
        Command::Sweep(args) => sweep(args, max_radius, pretty, out),
    }
}

fn verdict_code(v: &Verdict) -> i32 {
    if v.is_verified() {
        0
    } else {
        1
    }
}

fn write_certificate(out: &mut dyn Write, cert: &PairCertificate, pretty: bool) -> io::Result<()> {
    if !pretty {
        return emit_json(out, cert);
    }
    let [t1, t2] = cert.triples;
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |n| n.to_string());
    writeln!(out, "γ{t1} = {}", cert.words[0])?;
    writeln!(out, "γ{t2} = {}", cert.words[1])?;
    let si = &cert.self_intersection;
    writeln!(
        out,
        "self-intersection: formula {} / {}, computed {} / {}",
        si.formula[0],
        si.formula[1],
        opt(si.computed[0]),
        opt(si.computed[1])
    )?;
    for (i, arcs) in cert.arc_vectors.iter().enumerate() {
        match arcs {
            Some(v) => writeln!(out, "arcs γ{}: {v}", cert.triples[i])?,
            None => writeln!(out, "arcs γ{}: -", cert.triples[i])?,
        }
    }
    writeln!(out, "classes distinct: {}", cert.classes_distinct)?;
    writeln!(
        out,
        "trace polynomials equal: {}",
        cert.trace_polynomials_equal
    )?;
    writeln!(
        out,
        "y exponents: {:?} / {:?}",
        cert.y_exponent_multisets[0], cert.y_exponent_multisets[1]
    )?;
    match &cert.verdict {
        Verdict::Verified => writeln!(out, "verdict: verified")?,
        Verdict::Failed(r) => writeln!(out, "verdict: failed ({r})")?,
    }
    writeln!(out, "{}", cert.tool_version)
}

fn parse_range(s: &str, what: &str) -> std::result::Result<(u64, u64), Failure> {
    let bad = || {
        Failure::Usage(format!(
            "--{what}-range expects LO..HI with LO <= HI (got '{s}')"
        ))
    };
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

impl SweepArgs {
    pub fn spec(&self) -> std::result::Result<SweepSpec, String> {
        let spec = match (&self.k_range, &self.t_range, self.max_a) {
            (Some(k), Some(t), None) => SweepSpec::Family {
                k: parse_range(k, "k").map_err(failure_text)?,
                t: parse_range(t, "t").map_err(failure_text)?,
            },
            (None, None, Some(m)) => SweepSpec::MaxA(m),
            _ => return Err("give either --k-range and --t-range, or --max-a".into()),
        };
        Ok(spec)
    }
}

fn failure_text(f: Failure) -> String {
    match f {
        Failure::Usage(s) | Failure::Failed(s) => s,
    }
}

/// The pairs a sweep certifies, in output order.
pub fn sweep_pairs(spec: &SweepSpec) -> pantslab::Result<Vec<(TwistTriple, TwistTriple)>> {
    match spec {
        SweepSpec::Family { k, t } => {
            let mut out = Vec::new();
            for k in k.0..=k.1 {
                for t in t.0..=t.1 {
                    if let Ok(p) = FamilyParams::new(k, t) {
                        out.push(family_pair(p)?);
                    }
                }
            }
            Ok(out)
        }
        SweepSpec::MaxA(m) => diophantine_enumerate(*m),
    }
}

fn sweep(
    args: &SweepArgs,
    max_radius: Option<usize>,
    pretty: bool,
    out: &mut dyn Write,
) -> Outcome {
    let spec = args.spec().map_err(Failure::Usage)?;
    let pairs = sweep_pairs(&spec)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure::Failed(format!("thread pool: {e}")))?;
    let results: Vec<pantslab::Result<PairCertificate>> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(u, v)| verify_pair(u, v, &pair_search(u, v, max_radius)))
            .collect()
    });
    let certs = results.into_iter().collect::<pantslab::Result<Vec<_>>>()?;

    let mut body: Vec<u8> = Vec::new();
    match args.format {
        Format::Json => emit_json(&mut body, &certs)?,
        Format::Csv => write_csv(&mut body, &certs)?,
    }
    match &args.output {
        Some(path) => File::create(path)?.write_all(&body)?,
        None => out.write_all(&body)?,
    }
    let verified = certs.iter().filter(|c| c.verdict.is_verified()).count();
    if pretty {
        writeln!(
            out,
            "{} pairs, {} verified, {} failed",
            certs.len(),
            verified,
            certs.len() - verified
        )?;
    }
    Ok(if verified == certs.len() { 0 } else { 1 })
}

pub const CSV_HEADER: [&str; 25] = [
    "triple_1",
    "triple_2",
    "word_1",
    "word_2",
    "selfint_formula_1",
    "selfint_formula_2",
    "selfint_computed_1",
    "selfint_computed_2",
    "xx_1",
    "yy_1",
    "zz_1",
    "xy_1",
    "yz_1",
    "xz_1",
    "xx_2",
    "yy_2",
    "zz_2",
    "xy_2",
    "yz_2",
    "xz_2",
    "classes_distinct",
    "trace_polynomials_equal",
    "verdict",
    "failure_reason",
    "tool_version",
];

fn write_csv(out: &mut dyn Write, certs: &[PairCertificate]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let opt = |v: Option<u64>| v.map_or(String::new(), |n| n.to_string());
    for c in certs {
        let mut row = vec![
            c.triples[0].to_string(),
            c.triples[1].to_string(),
            c.words[0].clone(),
            c.words[1].clone(),
            c.self_intersection.formula[0].to_string(),
            c.self_intersection.formula[1].to_string(),
            opt(c.self_intersection.computed[0]),
            opt(c.self_intersection.computed[1]),
        ];
        for v in &c.arc_vectors {
            for arc in pantslab::ArcType::ALL {
                row.push(opt(v.as_ref().map(|v| v.get(arc))));
            }
        }
        row.push(c.classes_distinct.to_string());
        row.push(c.trace_polynomials_equal.to_string());
        let (verdict, reason) = match &c.verdict {
            Verdict::Verified => ("verified", String::new()),
            Verdict::Failed(r) => ("failed", r.clone()),
        };
        row.push(verdict.to_string());
        row.push(reason);
        row.push(c.tool_version.clone());
        w.write_record(&row)?;
    }
    w.flush()
}
