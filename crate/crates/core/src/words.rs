//! Word combinatorics in the free group `F(x, y)`.
//!
//! The fundamental group of the pair of pants is free on `x` and `y`, the loops
//! around two of its boundary components. Free homotopy classes of closed
//! curves are conjugacy classes; ignoring orientation also quotients by
//! inversion. [`CurveClass`] stores the canonical representative of such an
//! unoriented class.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the four letters `x`, `x⁻¹`, `y`, `y⁻¹`.
///
/// The derived order `x < x⁻¹ < y < y⁻¹` is the letter order used for
/// canonical forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    X,
    XInv,
    Y,
    YInv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::X, Generator::XInv, Generator::Y, Generator::YInv];

    pub fn inverse(self) -> Self {
        match self {
            Generator::X => Generator::XInv,
            Generator::XInv => Generator::X,
            Generator::Y => Generator::YInv,
            Generator::YInv => Generator::Y,
        }
    }

    /// True for `x` and `x⁻¹`.
    pub fn is_x(self) -> bool {
        matches!(self, Generator::X | Generator::XInv)
    }

    pub fn is_y(self) -> bool {
        !self.is_x()
    }

    /// `+1` for `x`, `y`; `-1` for the inverse letters.
    pub fn sign(self) -> i64 {
        match self {
            Generator::X | Generator::Y => 1,
            Generator::XInv | Generator::YInv => -1,
        }
    }

    /// Text symbol: `x`, `X` (= x⁻¹), `y`, `Y` (= y⁻¹).
    pub fn symbol(self) -> char {
        match self {
            Generator::X => 'x',
            Generator::XInv => 'X',
            Generator::Y => 'y',
            Generator::YInv => 'Y',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'x' => Some(Generator::X),
            'X' => Some(Generator::XInv),
            'y' => Some(Generator::Y),
            'Y' => Some(Generator::YInv),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Generator]) -> fmt::Result {
    for g in letters {
        write!(f, "{}", g.symbol())?;
    }
    Ok(())
}

/// Parses the textual word syntax: letters `x X y Y`, each optionally followed
/// by an exponent `^n` (a negative exponent inverts the letter). Whitespace is
/// ignored. The result is not reduced.
pub fn parse_letters(text: &str) -> Result<Vec<Generator>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let g = Generator::from_symbol(chars[i]).ok_or_else(|| {
            Error::Parse(format!(
                "unexpected character '{}' at position {}",
                chars[i], i
            ))
        })?;
        i += 1;
        let mut exponent: i64 = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            exponent = digits
                .parse()
                .map_err(|_| Error::Parse(format!("malformed exponent after '{}'", g.symbol())))?;
        }
        let letter = if exponent < 0 { g.inverse() } else { g };
        out.extend(std::iter::repeat_n(
            letter,
            exponent.unsigned_abs() as usize,
        ));
    }
    Ok(out)
}

/// A freely reduced word: no letter is adjacent to its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord {
    letters: Vec<Generator>,
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce<I>(letters: I) -> ReducedWord
where
    I: IntoIterator<Item = Generator>,
{
    let mut stack: Vec<Generator> = Vec::new();
    for g in letters {
        if stack.last() == Some(&g.inverse()) {
            stack.pop();
        } else {
            stack.push(g);
        }
    }
    ReducedWord { letters: stack }
}

impl ReducedWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        ReducedWord {
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    /// Group product `self · other`.
    pub fn product(&self, other: &ReducedWord) -> ReducedWord {
        free_reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// `self · w · self⁻¹`.
    pub fn conjugate(&self, w: &ReducedWord) -> ReducedWord {
        self.product(w).product(&self.inverse())
    }

    pub fn last(&self) -> Option<Generator> {
        self.letters.last().copied()
    }

    /// Splits `w = g · c · g⁻¹` with `c` cyclically reduced. Returns `(g, c)`.
    pub fn cyclic_split(&self) -> (ReducedWord, ReducedWord) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        (
            ReducedWord {
                letters: self.letters[..k].to_vec(),
            },
            ReducedWord {
                letters: self.letters[k..n - k].to_vec(),
            },
        )
    }
}

impl From<&CyclicWord> for ReducedWord {
    fn from(w: &CyclicWord) -> Self {
        ReducedWord {
            letters: w.letters.clone(),
        }
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(free_reduce(parse_letters(s)?))
    }
}

/// A nonempty cyclically reduced word, read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    letters: Vec<Generator>,
}

impl CyclicWord {
    /// Freely and cyclically reduces `letters`. Fails on the trivial class.
    pub fn new<I>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = Generator>,
    {
        let reduced = free_reduce(letters);
        let (_, core) = reduced.cyclic_split();
        if core.is_empty() {
            return Err(Error::TrivialClass);
        }
        Ok(CyclicWord {
            letters: core.letters,
        })
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false; kept for API symmetry with [`ReducedWord`].
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at a cyclic index (any integer).
    pub fn at(&self, i: isize) -> Generator {
        let n = self.letters.len() as isize;
        self.letters[i.rem_euclid(n) as usize]
    }

    /// Cyclic shift starting at letter `k`.
    pub fn rotate(&self, k: usize) -> CyclicWord {
        let n = self.letters.len();
        let k = k % n;
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        CyclicWord { letters }
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord {
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
        }
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl FromStr for CyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CyclicWord::new(parse_letters(s)?)
    }
}

/// Index of the lexicographically least rotation (two-pointer minimum
/// expression, linear time).
fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Unoriented free homotopy class, stored by its canonical cyclic word: the
/// least rotation of the word or of its inverse.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveClass {
    canonical: CyclicWord,
}

pub fn canonicalize(word: &CyclicWord) -> CurveClass {
    let forward = word.rotate(least_rotation(&word.letters));
    let inv = word.inverse();
    let backward = inv.rotate(least_rotation(&inv.letters));
    CurveClass {
        canonical: forward.min(backward),
    }
}

impl CurveClass {
    /// Reduces and canonicalizes arbitrary letters. Fails on the trivial class.
    pub fn from_letters<I>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = Generator>,
    {
        Ok(canonicalize(&CyclicWord::new(letters)?))
    }

    pub fn word(&self) -> &CyclicWord {
        &self.canonical
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

impl FromStr for CurveClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CurveClass::from_letters(parse_letters(s)?)
    }
}

/// Twist parameters `(a, b, c)` of the curve family: `a` and `c` odd, `b` even,
/// `a ≥ b ≥ c ≥ 1`, `b ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u64; 3]", into = "[u64; 3]")]
pub struct TwistTriple {
    a: u64,
    b: u64,
    c: u64,
}

impl TwistTriple {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidTriple(msg));
        if a.is_multiple_of(2) {
            return bad(format!("a must be odd (got a = {a})"));
        }
        if !b.is_multiple_of(2) {
            return bad(format!("b must be even (got b = {b})"));
        }
        if c.is_multiple_of(2) {
            return bad(format!("c must be odd (got c = {c})"));
        }
        if b < 2 {
            return bad(format!("b must be at least 2 (got b = {b})"));
        }
        if a < b || b < c {
            return bad(format!("ordering a >= b >= c violated (got {a}, {b}, {c})"));
        }
        Ok(TwistTriple { a, b, c })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }
}

impl TryFrom<[u64; 3]> for TwistTriple {
    type Error = Error;

    fn try_from(v: [u64; 3]) -> Result<Self> {
        TwistTriple::new(v[0], v[1], v[2])
    }
}

impl From<TwistTriple> for [u64; 3] {
    fn from(t: TwistTriple) -> Self {
        t.as_array()
    }
}

impl fmt::Display for TwistTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// The curve `γ(a,b,c) = y x y^((c+1)/2) x⁻¹ y^(b/2) x⁻¹ y^((a-1)/2)`.
pub fn gamma_word(t: TwistTriple) -> CyclicWord {
    use Generator::*;
    let ys = |n: u64| std::iter::repeat_n(Y, n as usize);
    let letters: Vec<Generator> = [Y, X]
        .into_iter()
        .chain(ys(t.c.div_ceil(2)))
        .chain([XInv])
        .chain(ys(t.b / 2))
        .chain([XInv])
        .chain(ys((t.a - 1) / 2))
        .collect();
    debug_assert_eq!(letters.len() as u64, 4 + (t.a + t.b + t.c) / 2);
    CyclicWord::new(letters).expect("family words are nontrivial")
}

/// Signed exponents of the maximal `y`-blocks of the cyclic word, blocks
/// merged across the seam. Sorted ascending.
///
/// The sign of every block flips when the class is read with the opposite
/// orientation; compare with [`same_up_to_sign`].
pub fn y_exponent_multiset(cls: &CurveClass) -> Vec<i64> {
    let w = cls.word();
    let n = w.len();
    let Some(start) = (0..n).find(|&i| w.letters[i].is_x()) else {
        // y^k: one block
        return vec![w.letters.iter().map(|g| g.sign()).sum()];
    };
    let mut blocks = Vec::new();
    let mut current = 0i64;
    for k in 1..=n {
        let g = w.letters[(start + k) % n];
        if g.is_y() {
            current += g.sign();
        } else if current != 0 {
            blocks.push(current);
            current = 0;
        }
    }
    blocks.sort_unstable();
    blocks
}

/// Multiset equality up to a global sign flip.
pub fn same_up_to_sign(a: &[i64], b: &[i64]) -> bool {
    let mut neg: Vec<i64> = a.iter().map(|v| -v).collect();
    neg.sort_unstable();
    a == b || neg == b
}

/// True iff the class is not a proper power.
pub fn is_primitive(cls: &CurveClass) -> bool {
    let s = cls.word().letters();
    let n = s.len();
    // KMP failure function; the smallest period is n - fail[n].
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    let period = n - fail[n];
    period == n || !n.is_multiple_of(period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Generator::*;

    fn w(s: &str) -> Vec<Generator> {
        parse_letters(s).unwrap()
    }

    fn class(s: &str) -> CurveClass {
        s.parse().unwrap()
    }

    /// Rescans for cancellations until nothing changes.
    fn naive_reduce(mut v: Vec<Generator>) -> Vec<Generator> {
        loop {
            let pos = v.windows(2).position(|p| p[0] == p[1].inverse());
            match pos {
                Some(i) => {
                    v.drain(i..i + 2);
                }
                None => return v,
            }
        }
    }

    fn letters() -> impl Strategy<Value = Vec<Generator>> {
        prop::collection::vec(prop::sample::select(Generator::ALL.to_vec()), 0..50)
    }

    #[test]
    fn free_reduce_examples() {
        assert!(free_reduce([X, XInv]).is_empty());
        assert_eq!(free_reduce([Y, X, XInv, Y]).letters(), &[Y, Y]);
    }

    #[test]
    fn parse_syntax() {
        assert_eq!(w("x^3 Y^2"), vec![X, X, X, YInv, YInv]);
        assert_eq!(w(" x y\tX "), vec![X, Y, XInv]);
        assert_eq!(w("y^-2"), vec![YInv, YInv]);
        assert_eq!(w("x^0y"), vec![Y]);
        assert!(parse_letters("xz").is_err());
        assert!(parse_letters("x^").is_err());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(class("xy"), class("yx"));
        assert_eq!(class("xy"), class("YX"));
        assert_eq!(CurveClass::from_letters(w("xX")), Err(Error::TrivialClass));
        assert_eq!(
            CurveClass::from_letters(w("yxXY")),
            Err(Error::TrivialClass)
        );
        assert_eq!(class("yxY").to_string(), "x");
    }

    #[test]
    fn all_variants_of_small_gamma_agree() {
        let word = gamma_word(TwistTriple::new(3, 2, 1).unwrap());
        let mut variants = Vec::new();
        for k in 0..word.len() {
            variants.push(word.rotate(k));
            variants.push(word.inverse().rotate(k));
        }
        assert_eq!(variants.len(), 14);
        let first = canonicalize(&variants[0]);
        assert!(variants.iter().all(|v| canonicalize(v) == first));
        // fixed point
        assert_eq!(canonicalize(first.word()), first);
    }

    #[test]
    fn gamma_words() {
        let g = gamma_word(TwistTriple::new(3, 2, 1).unwrap());
        assert_eq!(g.to_string(), "yxyXyXy");
        let g = gamma_word(TwistTriple::new(19, 8, 5).unwrap());
        assert_eq!(g.len(), 20);
        assert_eq!(g.to_string(), "yxyyyXyyyyXyyyyyyyyy");
        assert!(
            matches!(TwistTriple::new(2, 2, 2), Err(Error::InvalidTriple(m)) if m.contains("a must be odd"))
        );
        assert!(
            matches!(TwistTriple::new(3, 3, 1), Err(Error::InvalidTriple(m)) if m.contains("b must be even"))
        );
        assert!(
            matches!(TwistTriple::new(3, 2, 3), Err(Error::InvalidTriple(m)) if m.contains("ordering"))
        );
        assert!(matches!(
            TwistTriple::new(5, 2, 3),
            Err(Error::InvalidTriple(_))
        ));
    }

    #[test]
    fn y_exponents() {
        let g = canonicalize(&gamma_word(TwistTriple::new(3, 2, 1).unwrap()));
        assert!(same_up_to_sign(&y_exponent_multiset(&g), &[1, 1, 2]));
        assert!(y_exponent_multiset(&class("x")).is_empty());
        assert_eq!(y_exponent_multiset(&class("Y")).len(), 1);
        for (a, b, c) in [(3, 2, 1), (17, 12, 3), (19, 8, 5), (25, 24, 23), (9, 2, 1)] {
            let t = TwistTriple::new(a, b, c).unwrap();
            let cls = canonicalize(&gamma_word(t));
            let mut expected = vec![
                ((a - 1) / 2 + 1) as i64,
                c.div_ceil(2) as i64,
                (b / 2) as i64,
            ];
            expected.sort_unstable();
            assert!(
                same_up_to_sign(&y_exponent_multiset(&cls), &expected),
                "{t}"
            );
        }
    }

    #[test]
    fn primitivity() {
        assert!(!is_primitive(&class("xx")));
        assert!(!is_primitive(&class("xyxy")));
        assert!(is_primitive(&class("xy")));
        assert!(is_primitive(&class("x")));
        assert!(is_primitive(&class("xxy")));
        assert!(is_primitive(&canonicalize(&gamma_word(
            TwistTriple::new(19, 8, 5).unwrap()
        ))));
    }

    proptest! {
        #[test]
        fn reduce_matches_naive_scanner(v in letters()) {
            prop_assert_eq!(free_reduce(v.clone()).letters().to_vec(), naive_reduce(v));
        }

        #[test]
        fn reduce_is_idempotent(v in letters()) {
            let once = free_reduce(v);
            prop_assert_eq!(free_reduce(once.letters().to_vec()), once);
        }

        #[test]
        fn group_axioms(a in letters(), b in letters(), c in letters()) {
            let (a, b, c) = (free_reduce(a), free_reduce(b), free_reduce(c));
            prop_assert_eq!(a.product(&b).product(&c), a.product(&b.product(&c)));
            prop_assert!(a.product(&a.inverse()).is_empty());
            prop_assert_eq!(a.product(&ReducedWord::identity()), a);
        }

        #[test]
        fn canonical_form_is_shift_and_inversion_invariant(v in letters(), k in 0usize..64) {
            if let Ok(cw) = CyclicWord::new(v) {
                let cls = canonicalize(&cw);
                prop_assert_eq!(&canonicalize(&cw.rotate(k)), &cls);
                prop_assert_eq!(&canonicalize(&cw.inverse()), &cls);
                prop_assert_eq!(&canonicalize(cls.word()), &cls);
            }
        }

        #[test]
        fn canonical_form_is_the_brute_force_minimum(v in letters()) {
            if let Ok(cw) = CyclicWord::new(v) {
                let n = cw.len();
                let brute = (0..n)
                    .flat_map(|k| [cw.rotate(k), cw.inverse().rotate(k)])
                    .min()
                    .unwrap();
                let cls = canonicalize(&cw);
                prop_assert_eq!(cls.word(), &brute);
            }
        }

        #[test]
        fn gamma_length(a in 1u64..40, b in 1u64..40, c in 1u64..40) {
            let (a, b, c) = (2 * a + 1, 2 * b, 2 * c - 1);
            if let Ok(t) = TwistTriple::new(a, b, c) {
                prop_assert_eq!(gamma_word(t).len() as u64, 4 + (a + b + c) / 2);
            }
        }
    }
}
