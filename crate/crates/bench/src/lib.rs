//! Shared fixtures for the benchmarks under `benches/`.

use pantslab::{canonicalize, family_pair, gamma_word, CurveClass, FamilyParams, TwistTriple};

/// The two classes of the family pair with parameters `(k, t)`.
pub fn family_classes(k: u64, t: u64) -> (TwistTriple, TwistTriple, CurveClass, CurveClass) {
    let (u, v) = family_pair(FamilyParams::new(k, t).expect("valid family parameters"))
        .expect("valid family");
    (
        u,
        v,
        canonicalize(&gamma_word(u)),
        canonicalize(&gamma_word(v)),
    )
}
