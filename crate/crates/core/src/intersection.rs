//! Intersection counts on the pair of pants by linking lifts in the Cayley tree.
//!
//! A lift of a closed curve is a translate `u·axis(w)` of the axis of its word.
//! A lift is stored as `(u, k)` with `u` the vertex of the lift closest to the
//! identity and `k` the cyclic shift of `w` read forward from `u`; that pair
//! is unique per lift. Two lifts cross iff their endpoints link; a lift of a
//! curve crosses a lift of an arc iff it separates the two boundary axes the
//! arc lift joins.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boundary::{pants_boundary_classes, AxisPair, BoundaryPoint, RibbonStructure};
use crate::error::{Error, Result};
use crate::words::{
    canonicalize, free_reduce, is_primitive, CurveClass, CyclicWord, Generator, ReducedWord,
    TwistTriple,
};

/// Essential simple arcs on the pants, named by the boundary curves their
/// endpoints lie on (`z` is the boundary `(xy)⁻¹`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArcType {
    #[serde(rename = "xx")]
    XX,
    #[serde(rename = "yy")]
    YY,
    #[serde(rename = "zz")]
    ZZ,
    #[serde(rename = "xy")]
    XY,
    #[serde(rename = "yz")]
    YZ,
    #[serde(rename = "xz")]
    XZ,
}

impl ArcType {
    pub const ALL: [ArcType; 6] = [
        ArcType::XX,
        ArcType::YY,
        ArcType::ZZ,
        ArcType::XY,
        ArcType::YZ,
        ArcType::XZ,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ArcType::XX => "xx",
            ArcType::YY => "yy",
            ArcType::ZZ => "zz",
            ArcType::XY => "xy",
            ArcType::YZ => "yz",
            ArcType::XZ => "xz",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        let mut chars: Vec<char> = s.chars().filter(|c| c.is_ascii_alphabetic()).collect();
        chars.sort_unstable();
        match chars.as_slice() {
            ['x', 'x'] => Some(ArcType::XX),
            ['y', 'y'] => Some(ArcType::YY),
            ['z', 'z'] => Some(ArcType::ZZ),
            ['x', 'y'] => Some(ArcType::XY),
            ['y', 'z'] => Some(ArcType::YZ),
            ['x', 'z'] => Some(ArcType::XZ),
            _ => None,
        }
    }

    /// Arcs with an endpoint on the `y` boundary.
    pub fn touches_y(self) -> bool {
        matches!(self, ArcType::YY | ArcType::XY | ArcType::YZ)
    }

    /// One lift of the arc, as the two boundary axes it joins.
    ///
    /// Around the identity vertex the corners of the thickened tree lie on
    /// `axis(x)`, `axis(y)` and two lifts of `z`, `axis(xy)` and
    /// `x⁻¹·axis(xy)`; any two of them are joined by an embedded arc inside
    /// the vertex disk, which gives the three seams and the `z`-`z` arc. The
    /// `x`-`x` arc runs from `axis(x)` once around `y` to `y·axis(x)`, and
    /// the `y`-`y` arc around `x` likewise.
    pub fn base_lift(self) -> ArcLift {
        let line = |anchor: &str, word: &str| BoundaryLine {
            anchor: anchor.parse().unwrap(),
            word: word.parse().unwrap(),
        };
        let (a, b) = match self {
            ArcType::XX => (line("", "x"), line("y", "x")),
            ArcType::YY => (line("", "y"), line("x", "y")),
            ArcType::ZZ => (line("", "xy"), line("X", "xy")),
            ArcType::XY => (line("", "x"), line("", "y")),
            ArcType::YZ => (line("", "y"), line("", "xy")),
            ArcType::XZ => (line("", "x"), line("", "xy")),
        };
        ArcLift {
            first: a,
            second: b,
        }
    }
}

impl fmt::Display for ArcType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.label().as_bytes();
        write!(f, "({},{})", l[0] as char, l[1] as char)
    }
}

/// The line `anchor · axis(word)` of the Cayley tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLine {
    pub anchor: ReducedWord,
    pub word: CyclicWord,
}

impl BoundaryLine {
    pub fn axis(&self) -> AxisPair {
        AxisPair::of_cyclic(&self.word).translate(&self.anchor)
    }

    /// The vertex at signed position `p` along the line, measured from the anchor.
    fn vertex(&self, p: isize) -> ReducedWord {
        self.anchor.product(&axis_vertex(&self.word, p))
    }
}

/// A lift of an arc: the segment joining two boundary axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcLift {
    pub first: BoundaryLine,
    pub second: BoundaryLine,
}

impl ArcLift {
    pub fn translate(&self, g: &ReducedWord) -> ArcLift {
        let mv = |l: &BoundaryLine| BoundaryLine {
            anchor: g.product(&l.anchor),
            word: l.word.clone(),
        };
        ArcLift {
            first: mv(&self.first),
            second: mv(&self.second),
        }
    }

    /// Vertices within `radius` of the anchors along both lines, plus the
    /// tree path between the anchors.
    fn window(&self, radius: usize) -> Vec<ReducedWord> {
        let r = radius as isize;
        let mut out: Vec<ReducedWord> = Vec::new();
        for line in [&self.first, &self.second] {
            out.extend((-r..=r).map(|p| line.vertex(p)));
        }
        let bridge = self.first.anchor.inverse().product(&self.second.anchor);
        for k in 0..=bridge.len() {
            let step = free_reduce(bridge.letters()[..k].iter().copied());
            out.push(self.first.anchor.product(&step));
        }
        out
    }
}

/// Intersection counts with all six arc types.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcVector {
    counts: BTreeMap<ArcType, u64>,
}

impl ArcVector {
    pub fn get(&self, arc: ArcType) -> u64 {
        self.counts.get(&arc).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ArcType, u64)> + '_ {
        ArcType::ALL.into_iter().map(|a| (a, self.get(a)))
    }
}

impl FromIterator<(ArcType, u64)> for ArcVector {
    fn from_iter<I: IntoIterator<Item = (ArcType, u64)>>(iter: I) -> Self {
        ArcVector {
            counts: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for ArcVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(a, n)| format!("{a}={n}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Radius schedule for lift enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftSearch {
    pub initial_radius: usize,
    pub escalation_step: usize,
    pub max_radius: usize,
}

impl LiftSearch {
    pub fn new(initial_radius: usize, escalation_step: usize, max_radius: usize) -> Result<Self> {
        if initial_radius == 0 || escalation_step == 0 || max_radius == 0 {
            return Err(Error::InvalidSearch(
                "radii and step must be positive".into(),
            ));
        }
        if max_radius < initial_radius {
            return Err(Error::InvalidSearch(format!(
                "max radius {max_radius} below initial radius {initial_radius}"
            )));
        }
        Ok(LiftSearch {
            initial_radius,
            escalation_step,
            max_radius,
        })
    }

    /// Default schedule for inputs whose longest word has length `longest`:
    /// start at `longest + 2`, step 2, stop at `4·longest + 8`.
    pub fn for_length(longest: usize) -> Self {
        LiftSearch {
            initial_radius: longest + 2,
            escalation_step: 2,
            max_radius: 4 * longest + 8,
        }
    }

    pub fn with_max_radius(mut self, max_radius: usize) -> Self {
        self.max_radius = max_radius;
        self
    }

    fn check(&self, longest: usize) -> Result<()> {
        if self.initial_radius < longest + 2 {
            return Err(Error::InvalidSearch(format!(
                "initial radius {} is below word length {} + 2",
                self.initial_radius, longest
            )));
        }
        Ok(())
    }
}

/// A count together with the radius at which it stopped changing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stabilized {
    pub count: u64,
    pub radius: usize,
}

fn stabilize(
    search: &LiftSearch,
    mut count_at: impl FnMut(usize) -> Result<u64>,
) -> Result<Stabilized> {
    let mut radius = search.initial_radius;
    let mut previous = count_at(radius)?;
    loop {
        let next = radius + search.escalation_step;
        if next > search.max_radius {
            return Err(Error::UnstableEnumeration {
                max_radius: search.max_radius,
            });
        }
        let current = count_at(next)?;
        if current == previous {
            return Ok(Stabilized {
                count: current,
                radius,
            });
        }
        previous = current;
        radius = next;
    }
}

/// Vertex at signed position `p` on the axis of a cyclically reduced word.
fn axis_vertex(w: &CyclicWord, p: isize) -> ReducedWord {
    if p >= 0 {
        free_reduce((0..p).map(|k| w.at(k)))
    } else {
        free_reduce((0..-p).map(|k| w.at(-1 - k).inverse()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Lift {
    vertex: Vec<Generator>,
    shift: usize,
}

/// Normal form of the lift `g·axis(rotate(w, shift))`.
fn canonical_lift(w: &CyclicWord, g: &ReducedWord, shift: usize) -> Lift {
    let mut vertex = g.letters().to_vec();
    let mut i = shift as isize;
    while let Some(&last) = vertex.last() {
        if last == w.at(i).inverse() {
            vertex.pop();
            i += 1;
        } else if last == w.at(i - 1) {
            vertex.pop();
            i -= 1;
        } else {
            break;
        }
    }
    Lift {
        vertex,
        shift: i.rem_euclid(w.len() as isize) as usize,
    }
}

fn lift_axis(w: &CyclicWord, lift: &Lift) -> AxisPair {
    let head = free_reduce(lift.vertex.iter().copied());
    let forward = w.rotate(lift.shift);
    let plus = BoundaryPoint::new(&head, &forward).expect("canonical lifts start reduced");
    let minus =
        BoundaryPoint::new(&head, &forward.inverse()).expect("canonical lifts start reduced");
    AxisPair { plus, minus }
}

fn require_primitive(cls: &CurveClass) -> Result<()> {
    if is_primitive(cls) {
        Ok(())
    } else {
        Err(Error::NotPrimitive)
    }
}

fn require_pants(ribbon: &RibbonStructure) -> Result<()> {
    if ribbon.is_pants() {
        Ok(())
    } else {
        Err(Error::InvalidRibbon(format!(
            "{ribbon} is not the pants structure"
        )))
    }
}

/// Minimal self-intersection number of a primitive class.
pub fn self_intersection(cls: &CurveClass) -> Result<u64> {
    self_intersection_of_word(RibbonStructure::pants(), cls.word())
}

/// Self-intersection computed from the given rotation and orientation of the
/// word, on the given ribbon structure.
///
/// Lifts through the identity are the axes of the cyclic shifts of `w`. Two
/// crossing lifts share a segment of the tree; each crossing is counted at
/// the vertex where one of the two lifts enters the shared segment, which
/// happens once for each ordering of the pair.
pub fn self_intersection_of_word(ribbon: &RibbonStructure, w: &CyclicWord) -> Result<u64> {
    require_primitive(&canonicalize(w))?;
    require_pants(ribbon)?;
    let n = w.len() as isize;
    let axes: Vec<AxisPair> = (0..w.len())
        .map(|i| AxisPair::of_cyclic(&w.rotate(i)))
        .collect();
    let mut ordered = 0u64;
    for i in 0..n {
        let incoming = w.at(i - 1).inverse();
        for j in 0..n {
            if i == j || incoming == w.at(j) || incoming == w.at(j - 1).inverse() {
                continue;
            }
            if ribbon.link(&axes[i as usize], &axes[j as usize])? {
                ordered += 1;
            }
        }
    }
    debug_assert!(ordered.is_multiple_of(2));
    Ok(ordered / 2)
}

/// `(a-1)/2 + 3(b-2)/2 + 5(c-1)/2 + 6`.
pub fn selfint_formula(t: TwistTriple) -> u64 {
    (t.a() - 1) / 2 + 3 * (t.b() - 2) / 2 + 5 * (t.c() - 1) / 2 + 6
}

pub fn is_simple(cls: &CurveClass) -> Result<bool> {
    Ok(self_intersection(cls)? == 0)
}

/// Geometric intersection number of two distinct primitive classes.
pub fn pairwise_intersection(c1: &CurveClass, c2: &CurveClass, search: &LiftSearch) -> Result<u64> {
    pairwise_intersection_stabilized(RibbonStructure::pants(), c1, c2, search).map(|s| s.count)
}

pub fn pairwise_intersection_stabilized(
    ribbon: &RibbonStructure,
    c1: &CurveClass,
    c2: &CurveClass,
    search: &LiftSearch,
) -> Result<Stabilized> {
    require_primitive(c1)?;
    require_primitive(c2)?;
    if c1 == c2 {
        return Err(Error::IdenticalClasses);
    }
    search.check(c1.len().max(c2.len()))?;
    stabilize(search, |r| {
        pairwise_crossings_within(ribbon, c1.word(), c2.word(), r)
    })
}

/// Counts `⟨w2⟩`-orbits of lifts of `w1` crossing `axis(w2)`, among lifts
/// through vertices of `axis(w2)` at distance at most `radius` from the identity.
///
/// A crossing lift shares a segment with `axis(w2)`; its orbit is keyed by
/// the position where it enters that segment, modulo `|w2|`, together with
/// its own shift there.
pub fn pairwise_crossings_within(
    ribbon: &RibbonStructure,
    w1: &CyclicWord,
    w2: &CyclicWord,
    radius: usize,
) -> Result<u64> {
    require_pants(ribbon)?;
    let target = AxisPair::of_cyclic(w2);
    let r = radius as isize;
    let mut seen = HashSet::new();
    let mut orbits = HashSet::new();
    for p in -r..=r {
        let u = axis_vertex(w2, p);
        for i in 0..w1.len() {
            let lift = canonical_lift(w1, &u, i);
            if !seen.insert(lift.clone()) {
                continue;
            }
            if ribbon.link(&lift_axis(w1, &lift), &target)? {
                orbits.insert(entry_key(w1, w2, &lift));
            }
        }
    }
    Ok(orbits.len() as u64)
}

fn entry_key(w1: &CyclicWord, w2: &CyclicWord, lift: &Lift) -> (usize, usize) {
    // The closest vertex to the identity lies on every axis the lift links
    // with, since that axis passes through the identity.
    let v = &lift.vertex;
    let len = v.len() as isize;
    let mut p = if v.iter().enumerate().all(|(k, &g)| g == w2.at(k as isize)) {
        len
    } else if v
        .iter()
        .enumerate()
        .all(|(k, &g)| g == w2.at(-1 - k as isize).inverse())
    {
        -len
    } else {
        unreachable!("a linked lift meets the axis at its closest vertex");
    };
    let mut j = lift.shift as isize;
    let guard = w1.len() + w2.len() + 2;
    for _ in 0..=guard {
        let back = w2.at(p - 1).inverse();
        if back == w1.at(j) {
            j += 1;
        } else if back == w1.at(j - 1).inverse() {
            j -= 1;
        } else {
            return (
                p.rem_euclid(w2.len() as isize) as usize,
                j.rem_euclid(w1.len() as isize) as usize,
            );
        }
        p -= 1;
    }
    unreachable!("distinct primitive classes share only finite segments");
}

fn require_interior(cls: &CurveClass) -> Result<()> {
    if pants_boundary_classes().contains(cls) {
        return Err(Error::NotInterior(format!("{cls} is a boundary curve")));
    }
    Ok(())
}

/// Minimal intersection of a primitive interior class with an essential
/// simple arc.
pub fn arc_intersection(cls: &CurveClass, arc: ArcType, search: &LiftSearch) -> Result<u64> {
    arc_intersection_stabilized(
        RibbonStructure::pants(),
        cls.word(),
        &arc.base_lift(),
        search,
    )
    .map(|s| s.count)
}

/// Arc intersection for an arbitrary lift of the arc and an arbitrary
/// rotation/orientation of the word.
pub fn arc_intersection_stabilized(
    ribbon: &RibbonStructure,
    w: &CyclicWord,
    arc: &ArcLift,
    search: &LiftSearch,
) -> Result<Stabilized> {
    let cls = canonicalize(w);
    require_primitive(&cls)?;
    require_interior(&cls)?;
    search.check(w.len())?;
    stabilize(search, |r| arc_crossings_within(ribbon, w, arc, r))
}

/// Number of lifts of `w` separating the two boundary axes of `arc`, among
/// lifts through the window of radius `radius` around the arc lift.
pub fn arc_crossings_within(
    ribbon: &RibbonStructure,
    w: &CyclicWord,
    arc: &ArcLift,
    radius: usize,
) -> Result<u64> {
    require_pants(ribbon)?;
    let b1 = arc.first.axis();
    let b2 = arc.second.axis();
    let mut seen = HashSet::new();
    let mut count = 0;
    for u in arc.window(radius) {
        for i in 0..w.len() {
            let lift = canonical_lift(w, &u, i);
            if !seen.insert(lift.clone()) {
                continue;
            }
            if ribbon.separates(&lift_axis(w, &lift), &b1, &b2)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Intersections with all six arcs.
pub fn arc_vector(cls: &CurveClass, search: &LiftSearch) -> Result<ArcVector> {
    ArcType::ALL
        .into_iter()
        .map(|arc| Ok((arc, arc_intersection(cls, arc, search)?)))
        .collect()
}
