//! Cyclic order on the boundary of `F(x, y)` induced by a ribbon structure.
//!
//! A cyclic order of the four directions at the single vertex of the wedge of
//! two circles makes the wedge a ribbon graph, i.e. a spine of a surface with
//! boundary. Lifting that order to every vertex of the Cayley tree embeds the
//! tree in the plane, which orders its ends cyclically. Ends are infinite
//! reduced words; an axis is the pair of ends fixed by a group element. All
//! order decisions below are exact and combinatorial.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::words::{canonicalize, free_reduce, CurveClass, CyclicWord, Generator, ReducedWord};

/// Sign of a cyclic triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// Cyclic order of the four directions `x, x⁻¹, y, y⁻¹` at the vertex.
///
/// The direction `x⁻¹` is the incoming end of the `x` loop seen from the
/// vertex, so a letter always names the edge a path leaves along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RibbonStructure {
    order: [Generator; 4],
    position: [usize; 4],
}

impl RibbonStructure {
    pub fn new(order: [Generator; 4]) -> Result<Self> {
        let mut position = [usize::MAX; 4];
        for (i, g) in order.iter().enumerate() {
            if position[*g as usize] != usize::MAX {
                return Err(Error::InvalidRibbon(format!("direction {g} appears twice")));
            }
            position[*g as usize] = i;
        }
        Ok(RibbonStructure { order, position })
    }

    pub fn from_slice(order: &[Generator]) -> Result<Self> {
        let order: [Generator; 4] = order.try_into().map_err(|_| {
            Error::InvalidRibbon(format!("expected 4 directions, got {}", order.len()))
        })?;
        Self::new(order)
    }

    pub fn order(&self) -> [Generator; 4] {
        self.order
    }

    pub fn successor(&self, d: Generator) -> Generator {
        self.order[(self.position[d as usize] + 1) % 4]
    }

    /// The same cyclic order read backwards (the mirror-image surface).
    pub fn mirror(&self) -> Self {
        let [a, b, c, d] = self.order;
        Self::new([a, d, c, b]).expect("mirror of a valid order is valid")
    }

    /// The six cyclic orders, each written starting at `x`.
    pub fn candidates() -> Vec<RibbonStructure> {
        use Generator::*;
        let rest = [XInv, Y, YInv];
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        perms
            .iter()
            .map(|p| Self::new([X, rest[p[0]], rest[p[1]], rest[p[2]]]).unwrap())
            .collect()
    }

    /// The first candidate whose boundary walks are `x`, `y` and `(xy)⁻¹`.
    pub fn pants() -> &'static RibbonStructure {
        static PANTS: OnceLock<RibbonStructure> = OnceLock::new();
        PANTS.get_or_init(|| {
            Self::candidates()
                .into_iter()
                .find(|r| r.is_pants())
                .expect("some ribbon order yields the pants")
        })
    }

    /// All candidate orders with the pants boundary; each is a relabeling of
    /// the same surface.
    pub fn pants_orders() -> Vec<RibbonStructure> {
        Self::candidates()
            .into_iter()
            .filter(|r| r.is_pants())
            .collect()
    }

    pub fn is_pants(&self) -> bool {
        boundary_cycles(self) == pants_boundary_classes().to_vec()
    }

    /// Sign of three distinct directions: positive iff, going around from
    /// `a`, `b` comes before `c`.
    pub fn orientation(&self, a: Generator, b: Generator, c: Generator) -> Orientation {
        debug_assert!(a != b && b != c && a != c);
        let pa = self.position[a as usize];
        let pb = (self.position[b as usize] + 4 - pa) % 4;
        let pc = (self.position[c as usize] + 4 - pa) % 4;
        if pb < pc {
            Orientation::Positive
        } else {
            Orientation::Negative
        }
    }

    /// Cyclic orientation of three pairwise distinct boundary points.
    ///
    /// Descends the tree to the median vertex of the three rays and compares
    /// the three directions leaving it.
    pub fn cyclic_order(
        &self,
        p: &BoundaryPoint,
        q: &BoundaryPoint,
        r: &BoundaryPoint,
    ) -> Result<Orientation> {
        let lpq = p.divergence(q).ok_or(Error::CoincidentPoints)?;
        let lpr = p.divergence(r).ok_or(Error::CoincidentPoints)?;
        let lqr = q.divergence(r).ok_or(Error::CoincidentPoints)?;
        let m = lpq.max(lpr).max(lqr);
        let o = if lpq == lpr && lpr == lqr {
            self.orientation(p.letter_at(m), q.letter_at(m), r.letter_at(m))
        } else if lpq == m {
            let back = p.letter_at(m - 1).inverse();
            self.orientation(p.letter_at(m), q.letter_at(m), back)
        } else if lpr == m {
            let back = p.letter_at(m - 1).inverse();
            self.orientation(p.letter_at(m), back, r.letter_at(m))
        } else {
            let back = q.letter_at(m - 1).inverse();
            self.orientation(back, q.letter_at(m), r.letter_at(m))
        };
        Ok(o)
    }

    /// Whether the endpoints of `b` separate the endpoints of `a`.
    pub fn link(&self, a: &AxisPair, b: &AxisPair) -> Result<bool> {
        if a.shares_endpoint(b) {
            return Err(Error::DegeneratePair);
        }
        let plus = self.cyclic_order(&a.plus, &b.plus, &a.minus)?;
        let minus = self.cyclic_order(&a.plus, &b.minus, &a.minus)?;
        Ok(plus != minus)
    }

    /// Whether `a` separates `b1` from `b2`: both endpoints of each lie in
    /// one complementary interval of `a`'s endpoints, different intervals for
    /// the two.
    pub fn separates(&self, a: &AxisPair, b1: &AxisPair, b2: &AxisPair) -> Result<bool> {
        if b1 == b2 {
            return Err(Error::SeparationPrecondition(
                "the two axes coincide".into(),
            ));
        }
        if a.shares_endpoint(b1) || a.shares_endpoint(b2) {
            return Err(Error::SeparationPrecondition("shared endpoint".into()));
        }
        let side1 = self.cyclic_order(&a.plus, &b1.plus, &a.minus)?;
        if self.cyclic_order(&a.plus, &b1.minus, &a.minus)? != side1 {
            return Err(Error::SeparationPrecondition(
                "axis links the first pair".into(),
            ));
        }
        let side2 = self.cyclic_order(&a.plus, &b2.plus, &a.minus)?;
        if self.cyclic_order(&a.plus, &b2.minus, &a.minus)? != side2 {
            return Err(Error::SeparationPrecondition(
                "axis links the second pair".into(),
            ));
        }
        Ok(side1 != side2)
    }
}

impl fmt::Display for RibbonStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.order;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// Boundary walks of the ribbon graph, as unoriented classes.
///
/// A walk leaving along `d` arrives through the half-edge `d⁻¹` and leaves
/// next along the successor of `d⁻¹`.
pub fn boundary_cycles(r: &RibbonStructure) -> Vec<CurveClass> {
    let mut used = [false; 4];
    let mut out = BTreeSet::new();
    for start in Generator::ALL {
        if used[start as usize] {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        while !used[d as usize] {
            used[d as usize] = true;
            walk.push(d);
            d = r.successor(d.inverse());
        }
        out.insert(canonicalize(
            &CyclicWord::new(walk).expect("boundary walks are nontrivial"),
        ));
    }
    out.into_iter().collect()
}

/// The classes of the three boundary curves `x`, `y`, `xy`, sorted.
pub fn pants_boundary_classes() -> &'static [CurveClass; 3] {
    static CLASSES: OnceLock<[CurveClass; 3]> = OnceLock::new();
    CLASSES.get_or_init(|| {
        let mut v = ["x", "y", "xy"].map(|s| s.parse::<CurveClass>().unwrap());
        v.sort();
        v
    })
}

/// An eventually periodic infinite reduced word `head · repetend^∞`.
#[derive(Clone, Debug)]
pub struct BoundaryPoint {
    head: Vec<Generator>,
    repetend: Vec<Generator>,
}

impl BoundaryPoint {
    pub fn new(head: &ReducedWord, repetend: &CyclicWord) -> Result<Self> {
        if let (Some(h), Some(&r)) = (head.last(), repetend.letters().first()) {
            if h == r.inverse() {
                return Err(Error::InvalidBoundaryPoint(format!(
                    "head {head} cancels against repetend {repetend}"
                )));
            }
        }
        Ok(Self::normalized(
            head.letters().to_vec(),
            repetend.letters().to_vec(),
        ))
    }

    /// `w^∞` for a cyclically reduced word.
    pub fn ray(w: &CyclicWord) -> Self {
        Self::normalized(Vec::new(), w.letters().to_vec())
    }

    /// Shortest head, primitive repetend.
    fn normalized(mut head: Vec<Generator>, mut repetend: Vec<Generator>) -> Self {
        let n = repetend.len();
        if let Some(p) =
            (1..=n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| repetend[i] == repetend[i - p]))
        {
            repetend.truncate(p);
        }
        while head.last().is_some() && head.last() == repetend.last() {
            head.pop();
            repetend.rotate_right(1);
        }
        BoundaryPoint { head, repetend }
    }

    pub fn head(&self) -> &[Generator] {
        &self.head
    }

    pub fn repetend(&self) -> &[Generator] {
        &self.repetend
    }

    pub fn letter_at(&self, k: usize) -> Generator {
        if k < self.head.len() {
            self.head[k]
        } else {
            self.repetend[(k - self.head.len()) % self.repetend.len()]
        }
    }

    /// Depth beyond which agreement forces equality.
    pub fn comparison_depth(&self, other: &BoundaryPoint) -> usize {
        self.head.len() + other.head.len() + 2 * (self.repetend.len() + other.repetend.len()) + 4
    }

    /// First index where the two words differ, or `None` if they agree to
    /// [`comparison_depth`](Self::comparison_depth) (and are therefore equal).
    pub fn divergence(&self, other: &BoundaryPoint) -> Option<usize> {
        (0..self.comparison_depth(other)).find(|&k| self.letter_at(k) != other.letter_at(k))
    }

    /// Image under left multiplication by `g`.
    pub fn translate(&self, g: &ReducedWord) -> BoundaryPoint {
        if g.is_empty() {
            return self.clone();
        }
        let copies = g.len() / self.repetend.len() + 2;
        let mut prefix: Vec<Generator> = g.letters().to_vec();
        prefix.extend_from_slice(&self.head);
        for _ in 0..copies {
            prefix.extend_from_slice(&self.repetend);
        }
        let head = free_reduce(prefix);
        Self::normalized(head.letters().to_vec(), self.repetend.clone())
    }
}

impl PartialEq for BoundaryPoint {
    fn eq(&self, other: &Self) -> bool {
        self.divergence(other).is_none()
    }
}

impl Eq for BoundaryPoint {}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.head {
            write!(f, "{g}")?;
        }
        write!(f, "(")?;
        for g in &self.repetend {
            write!(f, "{g}")?;
        }
        write!(f, ")^inf")
    }
}

/// The attracting and repelling fixed points of a group element.
#[derive(Clone, Debug)]
pub struct AxisPair {
    pub plus: BoundaryPoint,
    pub minus: BoundaryPoint,
}

impl AxisPair {
    pub fn new(plus: BoundaryPoint, minus: BoundaryPoint) -> Result<Self> {
        if plus == minus {
            return Err(Error::CoincidentPoints);
        }
        Ok(AxisPair { plus, minus })
    }

    /// Axis of a cyclically reduced word; it passes through the identity.
    pub fn of_cyclic(w: &CyclicWord) -> Self {
        AxisPair {
            plus: BoundaryPoint::ray(w),
            minus: BoundaryPoint::ray(&w.inverse()),
        }
    }

    /// Axis of an arbitrary nontrivial element `g·c·g⁻¹`: the axis of `c`
    /// translated by `g`.
    pub fn of_element(u: &ReducedWord) -> Result<Self> {
        let (g, core) = u.cyclic_split();
        let c = CyclicWord::new(core.letters().iter().copied())?;
        Ok(Self::of_cyclic(&c).translate(&g))
    }

    pub fn translate(&self, g: &ReducedWord) -> Self {
        AxisPair {
            plus: self.plus.translate(g),
            minus: self.minus.translate(g),
        }
    }

    pub fn shares_endpoint(&self, other: &AxisPair) -> bool {
        self.plus == other.plus
            || self.plus == other.minus
            || self.minus == other.plus
            || self.minus == other.minus
    }
}

/// Unordered equality of endpoint pairs.
impl PartialEq for AxisPair {
    fn eq(&self, other: &Self) -> bool {
        (self.plus == other.plus && self.minus == other.minus)
            || (self.plus == other.minus && self.minus == other.plus)
    }
}

impl Eq for AxisPair {}

/// Axis of the canonical word of a class.
pub fn axis(cls: &CurveClass) -> AxisPair {
    AxisPair::of_cyclic(cls.word())
}

/// [`RibbonStructure::cyclic_order`] on the default pants structure.
pub fn cyclic_order(
    p: &BoundaryPoint,
    q: &BoundaryPoint,
    r: &BoundaryPoint,
) -> Result<Orientation> {
    RibbonStructure::pants().cyclic_order(p, q, r)
}

/// [`RibbonStructure::link`] on the default pants structure.
pub fn link(a: &AxisPair, b: &AxisPair) -> Result<bool> {
    RibbonStructure::pants().link(a, b)
}

/// [`RibbonStructure::separates`] on the default pants structure.
pub fn separates(a: &AxisPair, b1: &AxisPair, b2: &AxisPair) -> Result<bool> {
    RibbonStructure::pants().separates(a, b1, b2)
}
