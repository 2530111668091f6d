//! Integer polynomials in the Fricke coordinates `X = tr x`, `Y = tr y`, `Z = tr xy`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponents `(i, j, k)` of `Xⁱ Yʲ Zᵏ`.
pub type Monomial = (u32, u32, u32);

/// Sparse polynomial with arbitrary-precision coefficients; zero terms are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TracePolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial((0, 0, 0), c)
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn x() -> Self {
        Self::monomial((1, 0, 0), 1)
    }

    pub fn y() -> Self {
        Self::monomial((0, 1, 0), 1)
    }

    pub fn z() -> Self {
        Self::monomial((0, 0, 1), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|&(i, j, k)| i + j + k)
            .max()
            .unwrap_or(0)
    }

    /// Terms in graded-lexicographic order, highest first.
    pub fn terms(&self) -> Vec<(Monomial, &BigInt)> {
        let mut out: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        out.sort_by_key(|(m, _)| std::cmp::Reverse(grlex_key(*m)));
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TracePolynomial {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }
}

fn grlex_key((i, j, k): Monomial) -> (u32, u32, u32, u32) {
    (i + j + k, i, j, k)
}

impl Add for &TracePolynomial {
    type Output = TracePolynomial;
    fn add(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &TracePolynomial {
    type Output = TracePolynomial;
    fn sub(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &TracePolynomial {
    type Output = TracePolynomial;
    fn mul(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = TracePolynomial::zero();
        for ((a1, b1, c1), u) in &self.terms {
            for ((a2, b2, c2), v) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2), u * v);
            }
        }
        out
    }
}

impl Neg for &TracePolynomial {
    type Output = TracePolynomial;
    fn neg(self) -> TracePolynomial {
        TracePolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for TracePolynomial {
            type Output = TracePolynomial;
            fn $f(self, rhs: TracePolynomial) -> TracePolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for TracePolynomial {
    /// `coeff X^i Y^j Z^k` terms joined by `", "`; unit exponents are written
    /// bare and zero exponents omitted. The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j, k), c) in self.terms() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (name, e) in [('X', i), ('Y', j), ('Z', k)] {
                match e {
                    0 => {}
                    1 => write!(f, " {name}")?,
                    _ => write!(f, " {name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl FromStr for TracePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("polynomial: {msg}"));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split(',') {
            let mut parts = term.split_whitespace();
            let coeff: BigInt = parts
                .next()
                .ok_or_else(|| bad("empty term"))?
                .parse()
                .map_err(|_| bad(&format!("bad coefficient in '{}'", term.trim())))?;
            let mut m = [0u32; 3];
            for factor in parts {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| bad(&format!("bad exponent '{factor}'")))?,
                    ),
                    None => (factor, 1),
                };
                let slot = match name {
                    "X" => 0,
                    "Y" => 1,
                    "Z" => 2,
                    _ => return Err(bad(&format!("unknown variable '{name}'"))),
                };
                m[slot] += exp;
            }
            out.add_term((m[0], m[1], m[2]), coeff);
        }
        Ok(out)
    }
}

/// Exact binary fraction `mantissa · 2^exp`; every finite `f64` is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dyadic {
    mantissa: BigInt,
    exp: i64,
}

impl Dyadic {
    pub(crate) fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite value {v}");
        if v == 0.0 {
            return Dyadic {
                mantissa: BigInt::zero(),
                exp: 0,
            };
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Dyadic {
            mantissa: BigInt::from(m) * sign,
            exp: e,
        }
    }

    pub(crate) fn integer(c: &BigInt) -> Self {
        Dyadic {
            mantissa: c.clone(),
            exp: 0,
        }
    }

    fn align(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        (
            &self.mantissa << (self.exp - e) as usize,
            &other.mantissa << (other.exp - e) as usize,
            e,
        )
    }

    pub(crate) fn add(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.align(other);
        Dyadic {
            mantissa: a + b,
            exp: e,
        }
    }

    pub(crate) fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            mantissa: &self.mantissa * &other.mantissa,
            exp: self.exp + other.exp,
        }
    }

    pub(crate) fn pow(&self, n: u32) -> Dyadic {
        let mut out = Dyadic::integer(&BigInt::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Nearest-ish `f64`: truncated to 62 significant bits before the final rounding.
    pub(crate) fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let shift = (bits - 62).max(0);
        let top = (self.mantissa.abs() >> shift as usize)
            .to_u64()
            .expect("at most 62 bits") as f64;
        let v = top * pow2(self.exp + shift);
        if self.mantissa.is_negative() {
            -v
        } else {
            v
        }
    }
}

fn pow2(e: i64) -> f64 {
    // Split so intermediate powers stay in range.
    let mut v = 1.0f64;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

impl TracePolynomial {
    /// Exact evaluation at binary-fraction coordinates.
    pub(crate) fn evaluate_dyadic(&self, x: &Dyadic, y: &Dyadic, z: &Dyadic) -> Dyadic {
        let mut acc = Dyadic::integer(&BigInt::zero());
        for (&(i, j, k), c) in &self.terms {
            let term = Dyadic::integer(c)
                .mul(&x.pow(i))
                .mul(&y.pow(j))
                .mul(&z.pow(k));
            acc = acc.add(&term);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> TracePolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn display_is_graded_lex() {
        let x = TracePolynomial::x();
        let y = TracePolynomial::y();
        let z = TracePolynomial::z();
        let two = TracePolynomial::constant(2);
        let comm = &(&(&(&x * &x) + &(&y * &y)) + &(&z * &z)) - &(&(&(&x * &y) * &z) + &two);
        assert_eq!(comm.to_string(), "-1 X Y Z, 1 X^2, 1 Y^2, 1 Z^2, -2");
        assert_eq!(TracePolynomial::zero().to_string(), "0");
        assert_eq!(comm.total_degree(), 3);
        assert_eq!(p("-1 X Y Z, 1 X^2, 1 Y^2, 1 Z^2, -2"), comm);
    }

    #[test]
    fn parse_errors() {
        assert!("1 W".parse::<TracePolynomial>().is_err());
        assert!("a X".parse::<TracePolynomial>().is_err());
        assert!("1 X^q".parse::<TracePolynomial>().is_err());
        assert_eq!(p("1 X, -1 X"), TracePolynomial::zero());
    }

    #[test]
    fn dyadic_round_trip() {
        for v in [0.0, 1.0, -3.25, 1e-300, 5e-324, 1.7976931348623157e308, 0.1] {
            assert_eq!(Dyadic::from_f64(v).to_f64(), v);
        }
        let a = Dyadic::from_f64(0.1);
        let b = Dyadic::from_f64(0.2);
        assert_eq!(a.add(&b).to_f64(), 0.30000000000000004);
    }

    fn poly() -> impl Strategy<Value = TracePolynomial> {
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -20i64..20), 0..6).prop_map(|terms| {
            terms
                .into_iter()
                .fold(TracePolynomial::zero(), |acc, (m, c)| {
                    &acc + &TracePolynomial::monomial(m, c)
                })
        })
    }

    proptest! {
        #[test]
        fn serialization_round_trips(a in poly()) {
            prop_assert_eq!(a.to_string().parse::<TracePolynomial>().unwrap(), a);
        }

        #[test]
        fn ring_laws(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a + &(-&a), TracePolynomial::zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in poly(), b in poly(), xs in (-4i32..4, -4i32..4, -4i32..4)) {
            let d = |v: i32| Dyadic::from_f64(v as f64 / 4.0);
            let (x, y, z) = (d(xs.0), d(xs.1), d(xs.2));
            let prod = (&a * &b).evaluate_dyadic(&x, &y, &z);
            let sep = a.evaluate_dyadic(&x, &y, &z).mul(&b.evaluate_dyadic(&x, &y, &z));
            prop_assert_eq!(prod.to_f64(), sep.to_f64());
        }
    }
}
