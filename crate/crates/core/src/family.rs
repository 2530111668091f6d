//! The two-parameter family of twist-triple pairs, the Diophantine solution
//! set it lives in, and end-to-end pair certificates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intersection::{
    arc_vector, self_intersection, selfint_formula, ArcType, ArcVector, LiftSearch,
};
use crate::traces::trace_equivalent;
use crate::words::{canonicalize, gamma_word, y_exponent_multiset, CurveClass, TwistTriple};

pub const TOOL_VERSION: &str = concat!("pantslab ", env!("CARGO_PKG_VERSION"));

/// `k` even and positive, `t` odd and at least 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    k: u64,
    t: u64,
}

impl FamilyParams {
    pub fn new(k: u64, t: u64) -> Result<Self> {
        if k == 0 || k % 2 == 1 {
            return Err(Error::InvalidFamily(format!(
                "k must be an even positive integer (got k = {k})"
            )));
        }
        if t < 3 || t.is_multiple_of(2) {
            return Err(Error::InvalidFamily(format!(
                "t must be an odd integer >= 3 (got t = {t})"
            )));
        }
        Ok(FamilyParams { k, t })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn t(&self) -> u64 {
        self.t
    }
}

/// `((7k+t, 4k+t+1, t), (8k+t, 2k+t+1, k+t))`.
pub fn family_pair(p: FamilyParams) -> Result<(TwistTriple, TwistTriple)> {
    let (k, t) = (p.k, p.t);
    Ok((
        TwistTriple::new(7 * k + t, 4 * k + t + 1, t)?,
        TwistTriple::new(8 * k + t, 2 * k + t + 1, k + t)?,
    ))
}

/// Both linear constraints: `δa + 3δb + 5δc = 0` and `δa + δb + δc = 0`.
pub fn diophantine_check(t1: TwistTriple, t2: TwistTriple) -> bool {
    let d = |u: u64, v: u64| u as i128 - v as i128;
    let (da, db, dc) = (d(t1.a(), t2.a()), d(t1.b(), t2.b()), d(t1.c(), t2.c()));
    da + 3 * db + 5 * dc == 0 && da + db + dc == 0
}

/// All valid triples with largest entry at most `max_a`, in lexicographic order.
pub fn valid_triples(max_a: u64) -> Vec<TwistTriple> {
    let mut out = Vec::new();
    for a in (1..=max_a).step_by(2) {
        for b in (2..=a).step_by(2) {
            for c in (1..=b).step_by(2) {
                out.push(TwistTriple::new(a, b, c).expect("generated in range"));
            }
        }
    }
    out
}

/// Unordered pairs of distinct valid triples bounded by `max_a` that satisfy
/// both constraints, smaller triple first, sorted.
///
/// The constraints force `t2 - t1 = (d, -2d, d)`; the parity of `a` forces
/// `d` even. Each pair is generated once from its smaller triple with `d > 0`.
pub fn diophantine_enumerate(max_a: u64) -> Result<Vec<(TwistTriple, TwistTriple)>> {
    if max_a == 0 {
        return Err(Error::InvalidFamily("max_a must be at least 1".into()));
    }
    let mut pairs: Vec<(TwistTriple, TwistTriple)> = valid_triples(max_a)
        .into_par_iter()
        .flat_map_iter(|t| {
            (2..)
                .step_by(2)
                .take_while(move |&d| t.a() + d <= max_a && 2 * d < t.b())
                .filter_map(move |d| {
                    TwistTriple::new(t.a() + d, t.b() - 2 * d, t.c() + d)
                        .ok()
                        .map(|u| (t, u))
                })
        })
        .collect();
    pairs.sort();
    Ok(pairs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfIntersectionRecord {
    pub formula: [u64; 2],
    pub computed: [Option<u64>; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Failed(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

/// Record of the checks run by [`verify_pair`]. Fields left `None` belong to
/// a sub-computation that failed; the verdict then carries its error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCertificate {
    pub triples: [TwistTriple; 2],
    pub words: [String; 2],
    pub self_intersection: SelfIntersectionRecord,
    pub arc_vectors: [Option<ArcVector>; 2],
    pub classes_distinct: bool,
    pub trace_polynomials_equal: bool,
    pub y_exponent_multisets: [Vec<i64>; 2],
    pub verdict: Verdict,
    pub tool_version: String,
}

/// The default lift search for a pair: sized by the longer word.
pub fn pair_search(t1: TwistTriple, t2: TwistTriple) -> LiftSearch {
    let len = |t: TwistTriple| gamma_word(t).len();
    LiftSearch::for_length(len(t1).max(len(t2)))
}

struct Side {
    class: CurveClass,
    selfint: Result<u64>,
    arcs: Result<ArcVector>,
}

fn compute_side(t: TwistTriple, search: &LiftSearch) -> Side {
    let class = canonicalize(&gamma_word(t));
    let (selfint, arcs) = rayon::join(|| self_intersection(&class), || arc_vector(&class, search));
    Side {
        class,
        selfint,
        arcs,
    }
}

pub fn verify_pair(
    t1: TwistTriple,
    t2: TwistTriple,
    search: &LiftSearch,
) -> Result<PairCertificate> {
    if t1 == t2 {
        return Err(Error::IdenticalTriples);
    }
    let (s1, s2) = rayon::join(|| compute_side(t1, search), || compute_side(t2, search));
    let formula = [selfint_formula(t1), selfint_formula(t2)];
    let classes_distinct = s1.class != s2.class;
    let trace_polynomials_equal = trace_equivalent(&s1.class, &s2.class);
    let verdict = judge(
        &[t1, t2],
        &[&s1, &s2],
        formula,
        classes_distinct,
        trace_polynomials_equal,
    );
    Ok(PairCertificate {
        triples: [t1, t2],
        words: [gamma_word(t1).to_string(), gamma_word(t2).to_string()],
        self_intersection: SelfIntersectionRecord {
            formula,
            computed: [s1.selfint.clone().ok(), s2.selfint.clone().ok()],
        },
        arc_vectors: [s1.arcs.clone().ok(), s2.arcs.clone().ok()],
        classes_distinct,
        trace_polynomials_equal,
        y_exponent_multisets: [
            y_exponent_multiset(&s1.class),
            y_exponent_multiset(&s2.class),
        ],
        verdict,
        tool_version: TOOL_VERSION.to_string(),
    })
}

fn judge(
    triples: &[TwistTriple; 2],
    sides: &[&Side; 2],
    formula: [u64; 2],
    classes_distinct: bool,
    traces_equal: bool,
) -> Verdict {
    let mut computed = [0u64; 2];
    let mut arcs: [ArcVector; 2] = Default::default();
    for (i, side) in sides.iter().enumerate() {
        match &side.selfint {
            Ok(v) => computed[i] = *v,
            Err(e) => return Verdict::Failed(format!("self_intersection of {}: {e}", triples[i])),
        }
        match &side.arcs {
            Ok(v) => arcs[i] = v.clone(),
            Err(e) => return Verdict::Failed(format!("arc_vector of {}: {e}", triples[i])),
        }
    }
    if formula[0] != formula[1] {
        return Verdict::Failed(format!(
            "self-intersection formula values differ: {} vs {}",
            formula[0], formula[1]
        ));
    }
    for i in 0..2 {
        if computed[i] != formula[i] {
            return Verdict::Failed(format!(
                "computed self-intersection of {} is {} but the formula gives {}",
                triples[i], computed[i], formula[i]
            ));
        }
    }
    if let Some(arc) = ArcType::ALL
        .into_iter()
        .find(|&a| arcs[0].get(a) != arcs[1].get(a))
    {
        return Verdict::Failed(format!(
            "arc vectors differ at {arc}: {} vs {}",
            arcs[0].get(arc),
            arcs[1].get(arc)
        ));
    }
    if !classes_distinct {
        return Verdict::Failed("the two words define the same class".into());
    }
    if traces_equal {
        return Verdict::Failed("trace polynomials are equal".into());
    }
    Verdict::Verified
}
