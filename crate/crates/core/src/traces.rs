//! SL(2) trace polynomials and trace equivalence.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{Dyadic, TracePolynomial};
use crate::words::{canonicalize, CurveClass, CyclicWord, Generator, ReducedWord};

/// The polynomial `P` with `tr ρ(w) = P(tr ρx, tr ρy, tr ρxy)` for every
/// SL(2) representation `ρ`.
pub fn trace_polynomial(w: &ReducedWord) -> TracePolynomial {
    TraceMemo::default().trace(w.letters())
}

/// Trace polynomial of a class; conjugation and inversion leave it unchanged.
pub fn class_trace_polynomial(cls: &CurveClass) -> TracePolynomial {
    TraceMemo::default().trace(cls.word().letters())
}

pub fn trace_equivalent(c1: &CurveClass, c2: &CurveClass) -> bool {
    c1 == c2 || class_trace_polynomial(c1) == class_trace_polynomial(c2)
}

/// Memo keyed on the canonical representative of each conjugacy class met
/// during one recursion.
#[derive(Default)]
struct TraceMemo {
    table: HashMap<Vec<Generator>, TracePolynomial>,
}

impl TraceMemo {
    fn trace(&mut self, letters: &[Generator]) -> TracePolynomial {
        let key = match CyclicWord::new(letters.iter().copied()) {
            Ok(cw) => canonicalize(&cw).word().letters().to_vec(),
            Err(_) => return TracePolynomial::constant(2),
        };
        if let Some(p) = self.table.get(&key) {
            return p.clone();
        }
        let p = self.compute(&key);
        self.table.insert(key, p.clone());
        p
    }

    /// `u` is cyclically reduced and nonempty.
    fn compute(&mut self, u: &[Generator]) -> TracePolynomial {
        let n = u.len();
        if n == 1 {
            return if u[0].is_x() {
                TracePolynomial::x()
            } else {
                TracePolynomial::y()
            };
        }
        // A rotation ending in a square g·g: tr(v g) = tr(v) tr(g) - tr(v g⁻¹).
        if let Some(r) = (0..n).find(|&r| u[(r + n - 1) % n] == u[(r + n - 2) % n]) {
            let rot: Vec<Generator> = (0..n).map(|k| u[(r + k) % n]).collect();
            let g = rot[n - 1];
            let tg = self.trace(&[g]);
            let tv = self.trace(&rot[..n - 1]);
            let tw = self.trace(&rot[..n - 2]);
            return &(&tg * &tv) - &tw;
        }
        // A repeated letter: u = g P g Q and tr(gP·gQ) = tr(gP) tr(gQ) - tr(P Q⁻¹).
        for i in 0..n {
            if let Some(d) = (1..n).find(|&d| u[(i + d) % n] == u[i]) {
                let rot: Vec<Generator> = (0..n).map(|k| u[(i + k) % n]).collect();
                let (gp, gq) = rot.split_at(d);
                let p = &gp[1..];
                let q = &gq[1..];
                let pq: Vec<Generator> = p
                    .iter()
                    .copied()
                    .chain(q.iter().rev().map(|g| g.inverse()))
                    .collect();
                let a = self.trace(gp);
                let b = self.trace(gq);
                let c = self.trace(&pq);
                return &(&a * &b) - &c;
            }
        }
        // All letters distinct: xy-type words of length 2 or the commutator.
        let (x, y, z) = (
            TracePolynomial::x(),
            TracePolynomial::y(),
            TracePolynomial::z(),
        );
        match n {
            2 if u[0].sign() == u[1].sign() => z,
            2 => &(&x * &y) - &z,
            4 => {
                let squares = &(&(&x * &x) + &(&y * &y)) + &(&z * &z);
                &(&squares - &(&(&x * &y) * &z)) - &TracePolynomial::constant(2)
            }
            _ => unreachable!("cyclically reduced word with distinct letters has length 2 or 4"),
        }
    }
}

pub type Matrix = [[f64; 2]; 2];

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn det(a: &Matrix) -> f64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Inverse of a determinant-one matrix (its adjugate).
fn adjugate(a: &Matrix) -> Matrix {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

/// A pair of SL(2, R) matrices standing for `ρ(x)`, `ρ(y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepresentationPoint {
    a: Matrix,
    b: Matrix,
}

impl RepresentationPoint {
    pub const DET_TOLERANCE: f64 = 1e-9;

    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        for (name, m) in [("A", &a), ("B", &b)] {
            if m.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::InvalidRepresentation(format!(
                    "{name} has a non-finite entry"
                )));
            }
            let d = det(m);
            if (d - 1.0).abs() > Self::DET_TOLERANCE {
                return Err(Error::InvalidRepresentation(format!(
                    "det {name} = {d}, expected 1"
                )));
            }
        }
        Ok(RepresentationPoint { a, b })
    }

    /// Entries uniform in `[-2, 2]`, rejecting determinants below 0.1, then
    /// scaled to determinant one.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut draw = || loop {
            let m: Matrix = [
                [rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0)],
                [rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0)],
            ];
            let d = det(&m);
            if d > 0.1 {
                let s = d.sqrt().recip();
                return m.map(|row| row.map(|v| v * s));
            }
        };
        let a = draw();
        let b = draw();
        // Rescaling leaves the determinant within rounding of one.
        RepresentationPoint { a, b }
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    fn image(&self, g: Generator) -> Matrix {
        match g {
            Generator::X => self.a,
            Generator::XInv => adjugate(&self.a),
            Generator::Y => self.b,
            Generator::YInv => adjugate(&self.b),
        }
    }

    /// Trace of the matrix product along the word.
    pub fn word_trace(&self, w: &ReducedWord) -> f64 {
        let m = w
            .letters()
            .iter()
            .fold([[1.0, 0.0], [0.0, 1.0]], |acc, &g| {
                mat_mul(&acc, &self.image(g))
            });
        m[0][0] + m[1][1]
    }

    /// `(tr A, tr B, tr AB)` as exact binary fractions.
    fn coordinates(&self) -> (Dyadic, Dyadic, Dyadic) {
        let e = |v: f64| Dyadic::from_f64(v);
        let (a, b) = (&self.a, &self.b);
        let tr_a = e(a[0][0]).add(&e(a[1][1]));
        let tr_b = e(b[0][0]).add(&e(b[1][1]));
        let mut tr_ab = Dyadic::from_f64(0.0);
        for i in 0..2 {
            for k in 0..2 {
                tr_ab = tr_ab.add(&e(a[i][k]).mul(&e(b[k][i])));
            }
        }
        (tr_a, tr_b, tr_ab)
    }
}

/// `P(tr A, tr B, tr AB)`, evaluated exactly from the stored entries and
/// rounded once at the end.
pub fn evaluate(p: &TracePolynomial, pt: &RepresentationPoint) -> f64 {
    let (x, y, z) = pt.coordinates();
    p.evaluate_dyadic(&x, &y, &z).to_f64()
}
