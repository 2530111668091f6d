//! Exact curve combinatorics on a pair of pants.
//!
//! The pants has fundamental group `F(x, y)`; its boundary curves are `x`, `y`
//! and `(xy)⁻¹`. This crate builds the twist family `γ(a,b,c)`, counts
//! self-intersections and intersections with the six essential simple arcs by
//! linking lifts in the Cayley tree, computes SL(2) trace polynomials in
//! Fricke coordinates, and certifies pairs of curves that share every simple
//! intersection number while having distinct trace polynomials.

pub mod boundary;
pub mod error;
pub mod family;
pub mod intersection;
pub mod poly;
pub mod traces;
pub mod words;

pub use boundary::{AxisPair, BoundaryPoint, Orientation, RibbonStructure};
pub use error::{Error, Result};
pub use family::{
    diophantine_check, diophantine_enumerate, family_pair, pair_search, verify_pair, FamilyParams,
    PairCertificate, Verdict, TOOL_VERSION,
};
pub use intersection::{
    arc_intersection, arc_vector, is_simple, pairwise_intersection, self_intersection,
    selfint_formula, ArcType, ArcVector, LiftSearch,
};
pub use poly::TracePolynomial;
pub use traces::{
    class_trace_polynomial, evaluate, trace_equivalent, trace_polynomial, RepresentationPoint,
};
pub use words::{
    canonicalize, gamma_word, y_exponent_multiset, CurveClass, CyclicWord, Generator, ReducedWord,
    TwistTriple,
};
