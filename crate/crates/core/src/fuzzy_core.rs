//! Value types: crisp points, spreads, fuzzy points, alpha-cut intervals,
//! fuzzy numbers and their triangular summaries.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::{Error, Result};

/// Tolerance used when two triangular components are compared for equality.
pub const TRIPLE_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3d cross product.
    #[inline]
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn unit(theta: f64) -> Point2 {
        let (s, c) = theta.sin_cos();
        Point2::new(c, s)
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    #[inline]
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpreadKind {
    /// Zero spread: the fuzzy point degenerates to its core.
    Crisp,
    Circular,
    Elliptical,
}

/// Axis-aligned support radii of a fuzzy point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spread {
    kind: SpreadKind,
    p1: f64,
    p2: f64,
}

impl Spread {
    pub const fn crisp() -> Self {
        Spread { kind: SpreadKind::Crisp, p1: 0.0, p2: 0.0 }
    }

    pub fn circular(r: f64) -> Result<Self> {
        check_radius(r, r)?;
        Ok(Spread { kind: SpreadKind::Circular, p1: r, p2: r })
    }

    pub fn elliptical(p1: f64, p2: f64) -> Result<Self> {
        check_radius(p1, p2)?;
        Ok(Spread { kind: SpreadKind::Elliptical, p1, p2 })
    }

    pub fn kind(&self) -> SpreadKind {
        self.kind
    }

    /// Semi-axes along x and y.
    pub fn radii(&self) -> (f64, f64) {
        (self.p1, self.p2)
    }

    /// Radius when the support is a disk (or the core itself).
    pub fn radius(&self) -> Option<f64> {
        match self.kind {
            SpreadKind::Crisp => Some(0.0),
            SpreadKind::Circular => Some(self.p1),
            SpreadKind::Elliptical if self.p1 == self.p2 => Some(self.p1),
            SpreadKind::Elliptical => None,
        }
    }

    /// Equality of the support shapes within `tol`.
    pub fn approx_eq(&self, other: &Spread, tol: f64) -> bool {
        (self.p1 - other.p1).abs() <= tol && (self.p2 - other.p2).abs() <= tol
    }
}

fn check_radius(p1: f64, p2: f64) -> Result<()> {
    if p1.is_finite() && p2.is_finite() && p1 > 0.0 && p2 > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSpread { p1, p2 })
    }
}

/// Under and over boundary points of an alpha-cut along direction `theta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaBoundaryPair {
    pub under: Point2,
    pub over: Point2,
}

/// A fuzzy point with linear (conic) membership decay over an elliptical
/// support: `mu(q) = max(0, 1 - |((qx - ax) / p1, (qy - ay) / p2)|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FuzzyPoint {
    core: Point2,
    spread: Spread,
}

impl FuzzyPoint {
    pub fn new(core: Point2, spread: Spread) -> Result<Self> {
        if !core.is_finite() {
            return Err(Error::NonFinite { x: core.x, y: core.y });
        }
        Ok(FuzzyPoint { core, spread })
    }

    pub fn circular(x: f64, y: f64, r: f64) -> Result<Self> {
        FuzzyPoint::new(Point2::new(x, y), Spread::circular(r)?)
    }

    pub fn elliptical(x: f64, y: f64, p1: f64, p2: f64) -> Result<Self> {
        FuzzyPoint::new(Point2::new(x, y), Spread::elliptical(p1, p2)?)
    }

    pub fn crisp(x: f64, y: f64) -> Result<Self> {
        FuzzyPoint::new(Point2::new(x, y), Spread::crisp())
    }

    pub fn core(&self) -> Point2 {
        self.core
    }

    pub fn spread(&self) -> Spread {
        self.spread
    }

    /// Normalized elliptical radius of `q`; 1 on the support boundary.
    pub fn normalized_radius(&self, q: Point2) -> f64 {
        let d = q - self.core;
        match self.spread.kind {
            SpreadKind::Crisp => {
                if d.x == 0.0 && d.y == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            _ => (d.x / self.spread.p1).hypot(d.y / self.spread.p2),
        }
    }

    pub fn membership_at(&self, q: Point2) -> f64 {
        (1.0 - self.normalized_radius(q)).max(0.0)
    }

    pub fn in_support(&self, q: Point2) -> bool {
        self.normalized_radius(q) <= 1.0 + 1e-12
    }

    /// Semi-axes of the alpha-cut ellipse.
    pub fn cut_radii(&self, alpha: f64) -> (f64, f64) {
        let s = 1.0 - alpha;
        (self.spread.p1 * s, self.spread.p2 * s)
    }

    pub fn alpha_cut_boundary(&self, alpha: f64, theta: f64) -> AlphaBoundaryPair {
        let (r1, r2) = self.cut_radii(alpha);
        let (s, c) = theta.sin_cos();
        let offset = Point2::new(r1 * c, r2 * s);
        AlphaBoundaryPair { under: self.core - offset, over: self.core + offset }
    }
}

/// Closed real interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub const fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self` contains `inner`, allowing `tol` slack on both ends.
    pub fn contains_interval(&self, inner: &Interval, tol: f64) -> bool {
        self.lo <= inner.lo + tol && inner.hi <= self.hi + tol
    }
}

/// Summary `(l, m, u)` of a fuzzy number: support endpoints and core.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangularTriple {
    l: f64,
    m: f64,
    u: f64,
}

impl TriangularTriple {
    pub fn new(l: f64, m: f64, u: f64) -> Result<Self> {
        if l.is_nan() || m.is_nan() || u.is_nan() || l > m + TRIPLE_EPS || m > u + TRIPLE_EPS {
            return Err(Error::UnorderedTriple { l, m, u });
        }
        Ok(TriangularTriple { l, m, u })
    }

    pub const fn zero() -> Self {
        TriangularTriple { l: 0.0, m: 0.0, u: 0.0 }
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.l, self.m, self.u]
    }

    /// Componentwise image under a non-increasing map, reordered so the
    /// result is again `l <= m <= u`.
    pub fn map_decreasing(&self, f: impl Fn(f64) -> f64) -> TriangularTriple {
        TriangularTriple { l: f(self.u), m: f(self.m), u: f(self.l) }
    }

    pub fn max_abs_diff(&self, other: &TriangularTriple) -> f64 {
        (self.l - other.l).abs().max((self.m - other.m).abs()).max((self.u - other.u).abs())
    }
}

impl Add for TriangularTriple {
    type Output = TriangularTriple;
    fn add(self, rhs: TriangularTriple) -> TriangularTriple {
        TriangularTriple { l: self.l + rhs.l, m: self.m + rhs.m, u: self.u + rhs.u }
    }
}

impl fmt::Display for TriangularTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.l, self.m, self.u)
    }
}

pub fn tri_add(a: TriangularTriple, b: TriangularTriple) -> TriangularTriple {
    a + b
}

/// Outcome of the componentwise comparison of two triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuzzyOrder {
    /// All three components equal.
    Equal,
    /// Componentwise `<=` with at least one strict.
    Less,
    Greater,
    Incomparable,
}

pub fn fuzzy_order(a: &TriangularTriple, b: &TriangularTriple) -> FuzzyOrder {
    let pairs = [(a.l, b.l), (a.m, b.m), (a.u, b.u)];
    let le = pairs.iter().all(|&(x, y)| x <= y);
    let ge = pairs.iter().all(|&(x, y)| x >= y);
    match (le, ge) {
        (true, true) => FuzzyOrder::Equal,
        (true, false) => FuzzyOrder::Less,
        (false, true) => FuzzyOrder::Greater,
        (false, false) => FuzzyOrder::Incomparable,
    }
}

pub fn fuzzy_leq(a: &TriangularTriple, b: &TriangularTriple) -> bool {
    matches!(fuzzy_order(a, b), FuzzyOrder::Equal | FuzzyOrder::Less)
}

impl PartialOrd for TriangularTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match fuzzy_order(self, other) {
            FuzzyOrder::Equal => Some(Ordering::Equal),
            FuzzyOrder::Less => Some(Ordering::Less),
            FuzzyOrder::Greater => Some(Ordering::Greater),
            FuzzyOrder::Incomparable => None,
        }
    }
}

/// Uniform grid of alpha levels on `[0, 1]`, both ends included.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaGrid {
    levels: Vec<f64>,
}

impl AlphaGrid {
    pub const DEFAULT_LEVELS: usize = 101;

    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSampling(format!("alpha grid needs at least 2 levels, got {n}")));
        }
        let step = (n - 1) as f64;
        Ok(AlphaGrid { levels: (0..n).map(|i| i as f64 / step).collect() })
    }

    pub fn from_levels(mut levels: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = levels.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(Error::InvalidAlpha(bad));
        }
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        Ok(AlphaGrid { levels })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

impl Default for AlphaGrid {
    fn default() -> Self {
        AlphaGrid::uniform(Self::DEFAULT_LEVELS).expect("default grid is valid")
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

type CutFn = dyn Fn(f64) -> Interval + Send + Sync;

/// A fuzzy number held as its alpha-cut function `alpha -> [lo, hi]`.
///
/// Cuts are evaluated lazily; the triangular summary is computed once.
#[derive(Clone)]
pub struct FuzzyNumber {
    cuts: Arc<CutFn>,
    triple: TriangularTriple,
}

impl FuzzyNumber {
    pub fn from_cuts<F>(cuts: F) -> Self
    where
        F: Fn(f64) -> Interval + Send + Sync + 'static,
    {
        let support = cuts(0.0);
        let core = cuts(1.0);
        let m = 0.5 * (core.lo + core.hi);
        // clamp so rounding in the cut function cannot break l <= m <= u
        let triple = TriangularTriple { l: support.lo.min(m), m, u: support.hi.max(m) };
        FuzzyNumber { cuts: Arc::new(cuts), triple }
    }

    pub fn triangular(t: TriangularTriple) -> Self {
        FuzzyNumber::from_cuts(move |a| Interval::new(t.l + a * (t.m - t.l), t.u - a * (t.u - t.m)))
    }

    pub fn crisp(v: f64) -> Self {
        FuzzyNumber::from_cuts(move |_| Interval::point(v))
    }

    /// Alpha-cut; `alpha` is clamped into `[0, 1]`.
    pub fn cut(&self, alpha: f64) -> Interval {
        (self.cuts)(alpha.clamp(0.0, 1.0))
    }

    pub fn triple(&self) -> TriangularTriple {
        self.triple
    }

    pub fn sample(&self, grid: &AlphaGrid) -> Vec<(f64, Interval)> {
        grid.levels().iter().map(|&a| (a, self.cut(a))).collect()
    }

    /// Image under a strictly decreasing map, applied endpointwise.
    pub fn map_decreasing<F>(&self, f: F) -> FuzzyNumber
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let inner = Arc::clone(&self.cuts);
        FuzzyNumber::from_cuts(move |a| {
            let c = inner(a);
            Interval::new(f(c.hi), f(c.lo))
        })
    }

    /// Every cut on `grid` contains the next finer one (within `tol`).
    pub fn is_nested(&self, grid: &AlphaGrid, tol: f64) -> bool {
        let cuts = self.sample(grid);
        cuts.windows(2).all(|w| w[0].1.contains_interval(&w[1].1, tol) && w[1].1.lo <= w[1].1.hi + tol)
    }

    /// `sup { alpha : x in cut(alpha) }`, by bisection on the nested family.
    pub fn membership(&self, x: f64) -> f64 {
        membership_by_bisection(|a| self.cut(a), x, 1e-10)
    }
}

impl fmt::Debug for FuzzyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FuzzyNumber").field("triple", &self.triple).finish_non_exhaustive()
    }
}

pub(crate) fn membership_by_bisection(cut: impl Fn(f64) -> Interval, x: f64, tol: f64) -> f64 {
    if !cut(0.0).contains(x) {
        return 0.0;
    }
    if cut(1.0).contains(x) {
        return 1.0;
    }
    let (mut inside, mut outside) = (0.0_f64, 1.0_f64);
    while outside - inside > tol {
        let mid = 0.5 * (inside + outside);
        if cut(mid).contains(x) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    0.5 * (inside + outside)
}
