//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use pantslab::boundary::{boundary_cycles, pants_boundary_classes};
use pantslab::family::valid_triples;
use pantslab::intersection::{
    arc_crossings_within, arc_intersection_stabilized, self_intersection_of_word,
};
use pantslab::words::{free_reduce, is_primitive};
use pantslab::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use std::result::Result;

const GRID_MAX_A: u64 = 25;
const TRACE_WORDS: usize = 50;
const TRACE_MAX_LEN: usize = 40;
const TRACE_POINTS: usize = 100;
const TRACE_REL_TOL: f64 = 1e-6;
const INVARIANCE_WORDS: usize = 200;
const INVARIANCE_MAX_LEN: usize = 12;
const CONJUGATOR_MAX_LEN: usize = 6;
const STABILITY_OFFSETS: [usize; 2] = [2, 4];

type Check = Result<String, String>;
type Formula = Box<dyn Fn(TwistTriple) -> u64 + Sync>;
type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Check + 'a>);

fn gamma_class(t: TwistTriple) -> CurveClass {
    canonicalize(&gamma_word(t))
}

fn search_for(cls: &CurveClass) -> LiftSearch {
    LiftSearch::for_length(cls.len())
}

fn random_reduced(rng: &mut StdRng, max_len: usize) -> ReducedWord {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Generator> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = Generator::ALL[rng.gen_range(0..4)];
        if letters.last() != Some(&g.inverse()) {
            letters.push(g);
        }
    }
    free_reduce(letters)
}

fn random_primitive(rng: &mut StdRng, max_len: usize) -> CyclicWord {
    loop {
        let w = random_reduced(rng, max_len);
        if let Ok(c) = CyclicWord::new(w.letters().iter().copied()) {
            if is_primitive(&canonicalize(&c)) {
                return c;
            }
        }
    }
}

/// Arc vectors of the whole grid, with the radius each count stabilized at.
type GridArcs = Vec<(TwistTriple, BTreeMap<ArcType, (u64, usize)>)>;

fn grid_arcs() -> Result<GridArcs, String> {
    let pants = RibbonStructure::pants();
    valid_triples(GRID_MAX_A)
        .into_par_iter()
        .map(|t| {
            let cls = gamma_class(t);
            let mut row = BTreeMap::new();
            for arc in ArcType::ALL {
                let s = arc_intersection_stabilized(
                    pants,
                    cls.word(),
                    &arc.base_lift(),
                    &search_for(&cls),
                )
                .map_err(|e| format!("{t} {arc}: {e}"))?;
                row.insert(arc, (s.count, s.radius));
            }
            Ok((t, row))
        })
        .collect()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let grid = valid_triples(GRID_MAX_A);
    let mismatches: Vec<String> = grid
        .par_iter()
        .filter_map(|&t| match self_intersection(&gamma_class(t)) {
            Ok(v) if v == selfint_formula(t) => None,
            Ok(v) => Some(format!("{t}: computed {v}, formula {}", selfint_formula(t))),
            Err(e) => Some(format!("{t}: {e}")),
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    if !mismatches.is_empty() {
        return Err(format!(
            "{} mismatches, first {}",
            mismatches.len(),
            mismatches[0]
        ));
    }
    if secs > 300.0 {
        return Err(format!("took {secs:.1}s, limit 300s"));
    }
    Ok(format!(
        "{} triples with a <= {GRID_MAX_A} agree ({secs:.2}s)",
        grid.len()
    ))
}

fn criterion_2(grid: &GridArcs) -> Check {
    let s13 = |t: TwistTriple| (t.a() - 1) / 2 + (t.b() - 2) / 2 + (t.c() - 1) / 2;
    let formulas: [(&str, Formula); 3] = [
        (
            "s1 = (a-1)/2+(b-2)/2+(c-1)/2+3",
            Box::new(move |t| s13(t) + 3),
        ),
        (
            "s2 = a+b+c",
            Box::new(|t: TwistTriple| t.a() + t.b() + t.c()),
        ),
        (
            "s3 = (a-1)/2+(b-2)/2+(c-1)/2+4",
            Box::new(move |t| s13(t) + 4),
        ),
    ];
    let y_arcs: Vec<ArcType> = ArcType::ALL.into_iter().filter(|a| a.touches_y()).collect();
    let mut labels = Vec::new();
    let mut used = Vec::new();
    for (name, f) in &formulas {
        let matching: Vec<ArcType> = y_arcs
            .iter()
            .copied()
            .filter(|&arc| grid.iter().all(|(t, row)| row[&arc].0 == f(*t)))
            .collect();
        match matching.as_slice() {
            [arc] if !used.contains(arc) => {
                used.push(*arc);
                labels.push(format!("{} -> {arc}", &name[..2]));
            }
            _ => {
                let arc = y_arcs
                    .iter()
                    .find(|a| !used.contains(a))
                    .copied()
                    .unwrap_or(ArcType::YY);
                let bad = grid.iter().find(|(t, row)| row[&arc].0 != f(*t));
                return Err(match bad {
                    Some((t, row)) => format!(
                        "{name}: no arc matches; e.g. {arc} on {t} is {}, expected {}",
                        row[&arc].0,
                        f(*t)
                    ),
                    None => format!("{name}: ambiguous calibration {matching:?}"),
                });
            }
        }
    }
    Ok(format!(
        "{} triples; calibration {}",
        grid.len(),
        labels.join(", ")
    ))
}

fn criterion_3() -> Check {
    let params: Vec<(u64, u64)> = [2, 4, 6, 8]
        .into_iter()
        .flat_map(|k| [3, 5, 7, 9].into_iter().map(move |t| (k, t)))
        .collect();
    let certs: Vec<(u64, u64, PairCertificate)> = params
        .par_iter()
        .map(|&(k, t)| {
            let (u, v) = family_pair(FamilyParams::new(k, t)?)?;
            Ok((k, t, verify_pair(u, v, &pair_search(u, v))?))
        })
        .collect::<pantslab::Result<_>>()
        .map_err(|e| e.to_string())?;
    for (k, t, c) in &certs {
        if let Verdict::Failed(r) = &c.verdict {
            return Err(format!("(k={k}, t={t}) failed: {r}"));
        }
    }
    let (_, _, anchor) = &certs[0];
    let yy = |i: usize| anchor.arc_vectors[i].as_ref().map(|v| v.get(ArcType::YY));
    let expected_triples = [
        TwistTriple::new(17, 12, 3).unwrap(),
        TwistTriple::new(19, 8, 5).unwrap(),
    ];
    if anchor.triples != expected_triples
        || anchor.self_intersection.computed != [Some(34), Some(34)]
        || yy(0) != Some(32)
        || yy(1) != Some(32)
    {
        return Err(format!("anchor (k=2,t=3) mismatch: {:?}", anchor));
    }
    Ok(format!(
        "{} pairs verified; anchor (17,12,3)/(19,8,5) self-intersection 34 = 34, (y,y) 32 = 32",
        certs.len()
    ))
}

fn criterion_4() -> Check {
    let brute = |max_a: u64| {
        let all = valid_triples(max_a);
        let mut out = Vec::new();
        for &u in &all {
            for &v in &all {
                if u < v && diophantine_check(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    };
    let t = |a, b, c| TwistTriple::new(a, b, c).unwrap();
    let e11 = diophantine_enumerate(11).map_err(|e| e.to_string())?;
    let e8 = diophantine_enumerate(8).map_err(|e| e.to_string())?;
    if e11 != vec![(t(9, 8, 1), t(11, 4, 3))] {
        return Err(format!("enumerate(11) = {e11:?}"));
    }
    if e11 != brute(11) {
        return Err("enumerate(11) disagrees with brute force".into());
    }
    if !e8.is_empty() || !brute(8).is_empty() {
        return Err(format!("enumerate(8) = {e8:?}"));
    }
    Ok("enumerate(11) = {((9,8,1),(11,4,3))} = brute force; enumerate(8) empty".into())
}

fn criterion_5() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut worst = 0.0f64;
    let mut longest = 0;
    for _ in 0..TRACE_WORDS {
        let w = random_reduced(&mut rng, TRACE_MAX_LEN);
        longest = longest.max(w.len());
        let p = trace_polynomial(&w);
        for _ in 0..TRACE_POINTS {
            let pt = RepresentationPoint::sample(&mut rng);
            let direct = pt.word_trace(&w);
            let err = (evaluate(&p, &pt) - direct).abs() / direct.abs().max(1.0);
            worst = worst.max(err);
            if err > TRACE_REL_TOL {
                return Err(format!(
                    "word {w}: relative error {err:e} > {TRACE_REL_TOL:e}"
                ));
            }
        }
    }
    Ok(format!(
        "{TRACE_WORDS} words (longest {longest}) x {TRACE_POINTS} points, max relative error {worst:.2e} <= {TRACE_REL_TOL:e}"
    ))
}

fn criterion_6() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let cases: Vec<(CyclicWord, ReducedWord)> = (0..INVARIANCE_WORDS)
        .map(|_| {
            (
                random_primitive(&mut rng, INVARIANCE_MAX_LEN),
                random_reduced(&mut rng, CONJUGATOR_MAX_LEN),
            )
        })
        .collect();
    let pants = RibbonStructure::pants();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(w, g)| {
            let check = || -> Result<(), String> {
                let word = ReducedWord::from(w);
                let conj = g.conjugate(&word);
                let conj_cyc =
                    CyclicWord::new(conj.letters().iter().copied()).map_err(|e| e.to_string())?;
                let inv_cyc = w.inverse();
                let si =
                    |c: &CyclicWord| self_intersection_of_word(pants, c).map_err(|e| e.to_string());
                let base = si(w)?;
                if si(&conj_cyc)? != base || si(&inv_cyc)? != base {
                    return Err("self_intersection".into());
                }
                let tp = trace_polynomial(&word);
                if trace_polynomial(&conj) != tp || trace_polynomial(&word.inverse()) != tp {
                    return Err("trace_polynomial".into());
                }
                let cls = canonicalize(w);
                if pants_boundary_classes().contains(&cls) {
                    return Ok(());
                }
                let s = LiftSearch::for_length(w.len() + 2 * g.len());
                for arc in ArcType::ALL {
                    let count = |c: &CyclicWord, lift| {
                        arc_intersection_stabilized(pants, c, &lift, &s)
                            .map(|r| r.count)
                            .map_err(|e| e.to_string())
                    };
                    let base = count(w, arc.base_lift())?;
                    // Conjugating the word and translating the arc lift by the same element.
                    if count(&conj_cyc, arc.base_lift())? != base
                        || count(w, arc.base_lift().translate(g))? != base
                        || count(&inv_cyc, arc.base_lift())? != base
                    {
                        return Err(format!("arc {arc}"));
                    }
                }
                Ok(())
            };
            check()
                .err()
                .map(|what| format!("{what} not invariant for w = {w}, g = {g}"))
        })
        .collect();
    match failures.first() {
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
        None => Ok(format!(
            "{INVARIANCE_WORDS} primitive words (length <= {INVARIANCE_MAX_LEN}), conjugators up to length {CONJUGATOR_MAX_LEN}"
        )),
    }
}

fn criterion_7() -> Check {
    let pants = RibbonStructure::pants();
    let cycles = boundary_cycles(pants);
    let expected: Vec<CurveClass> = ["x", "y", "xy"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let mut sorted = expected.clone();
    sorted.sort();
    if cycles != sorted {
        return Err(format!(
            "selected structure {pants} has boundary {cycles:?}"
        ));
    }
    let torus =
        RibbonStructure::new([Generator::X, Generator::Y, Generator::XInv, Generator::YInv])
            .unwrap();
    let torus_cycles = boundary_cycles(&torus);
    if torus_cycles.len() != 1 {
        return Err(format!(
            "{torus} has {} boundary cycles",
            torus_cycles.len()
        ));
    }
    let probe: CyclicWord = "xY".parse().unwrap();
    match self_intersection_of_word(&torus, &probe) {
        Err(Error::InvalidRibbon(_)) => {}
        other => return Err(format!("torus structure not rejected: {other:?}")),
    }
    let candidates = RibbonStructure::candidates();
    let n_torus = candidates
        .iter()
        .filter(|r| boundary_cycles(r).len() == 1)
        .count();
    let n_pants = candidates.iter().filter(|r| r.is_pants()).count();
    Ok(format!(
        "{pants} bounds x, y, (xy)^-1; {torus} has single boundary {} and is rejected ({n_pants} of {} orders bound x, y, xy; {n_torus} are tori)",
        torus_cycles[0],
        candidates.len()
    ))
}

fn criterion_8(grid: &GridArcs) -> Check {
    let pants = RibbonStructure::pants();
    let mut jobs: Vec<(CurveClass, ArcType, u64, usize)> = Vec::new();
    for (t, row) in grid {
        let cls = gamma_class(*t);
        for (&arc, &(count, radius)) in row {
            jobs.push((cls.clone(), arc, count, radius));
        }
    }
    let family_jobs: Vec<(CurveClass, ArcType, u64, usize)> = [2u64, 4, 6, 8]
        .into_iter()
        .flat_map(|k| [3u64, 5, 7, 9].into_iter().map(move |t| (k, t)))
        .flat_map(|(k, t)| {
            let (u, v) = family_pair(FamilyParams::new(k, t).unwrap()).unwrap();
            [u, v]
        })
        .filter(|t| t.a() > GRID_MAX_A)
        .flat_map(|t| {
            let cls = gamma_class(t);
            ArcType::ALL.into_iter().map(move |arc| {
                let s = arc_intersection_stabilized(
                    pants,
                    cls.word(),
                    &arc.base_lift(),
                    &search_for(&cls),
                )
                .expect("family computation stabilizes");
                (cls.clone(), arc, s.count, s.radius)
            })
        })
        .collect();
    jobs.extend(family_jobs);
    let unstable: Vec<String> = jobs
        .par_iter()
        .filter_map(|(cls, arc, count, radius)| {
            let max = search_for(cls).max_radius;
            if *radius > max {
                return Some(format!("{cls} {arc}: stabilized at {radius} > max {max}"));
            }
            for off in STABILITY_OFFSETS {
                match arc_crossings_within(pants, cls.word(), &arc.base_lift(), radius + off) {
                    Ok(c) if c == *count => {}
                    Ok(c) => {
                        return Some(format!(
                            "{cls} {arc}: {count} at radius {radius}, {c} at +{off}"
                        ))
                    }
                    Err(e) => return Some(format!("{cls} {arc}: {e}")),
                }
            }
            None
        })
        .collect();
    match unstable.first() {
        Some(f) => Err(format!("{} unstable counts, first: {f}", unstable.len())),
        None => {
            let max_r = jobs.iter().map(|j| j.3).max().unwrap_or(0);
            Ok(format!(
                "{} arc counts stable at stabilization radius +2 and +4 (largest stabilization radius {max_r})",
                jobs.len()
            ))
        }
    }
}

fn main() -> ExitCode {
    let grid = grid_arcs();
    let on_grid = |f: fn(&GridArcs) -> Check| {
        let grid = &grid;
        move || match grid {
            Ok(g) => f(g),
            Err(e) => Err(format!("grid computation failed: {e}")),
        }
    };
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "self-intersection formula agreement",
            Box::new(criterion_1),
        ),
        (2, "arc spectra", Box::new(on_grid(criterion_2))),
        (3, "family certificates", Box::new(criterion_3)),
        (4, "minimal-solution enumeration", Box::new(criterion_4)),
        (5, "trace oracle", Box::new(criterion_5)),
        (6, "invariance suite", Box::new(criterion_6)),
        (7, "ribbon validation", Box::new(criterion_7)),
        (8, "stability", Box::new(on_grid(criterion_8))),
    ];
    let mut failed = 0;
    for (n, name, check) in &criteria {
        match check() {
            Ok(detail) => println!("criterion {n} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
