//! Fuzzy equidistant sets (midsets) of two circular fuzzy points.
//!
//! At level `alpha` the focal sets are disks of radii `c_i = r_i (1 - alpha)`.
//! A query point at distances `d_1`, `d_2` from the cores is equidistant on
//! the inverse-points branch when `d1 - c1 = d2 - c2`, and on the
//! same-points branch when `d1 - c1 = c2 - d2`.

use rayon::prelude::*;

use crate::contour::{retain_points, zero_contour};
use crate::fuzzy_core::{check_alpha, AlphaGrid, FuzzyPoint, Point2};
use crate::optimize::bisect_root;
use crate::{Error, Result};

pub use crate::contour::BBox;

/// Tolerance for tangency and for zero tests on discriminants.
const TOL: f64 = 1e-9;
/// Residual tolerance for refined contour vertices.
pub const CONTOUR_TOL: f64 = 1e-12;
const MIN_RESOLUTION: usize = 16;
pub const DEFAULT_RESOLUTION: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchTag {
    InversePoints,
    SamePoints,
}

impl BranchTag {
    pub fn name(self) -> &'static str {
        match self {
            BranchTag::InversePoints => "inverse_points",
            BranchTag::SamePoints => "same_points",
        }
    }
}

fn circular_radii(a: &FuzzyPoint, b: &FuzzyPoint) -> Result<(f64, f64)> {
    match (a.spread().radius(), b.spread().radius()) {
        (Some(r1), Some(r2)) => Ok((r1, r2)),
        _ => Err(Error::NotCircular),
    }
}

/// Signed residual of the branch equation at `q`.
pub fn branch_residual(q: Point2, a: &FuzzyPoint, b: &FuzzyPoint, alpha: f64, branch: BranchTag) -> Result<f64> {
    check_alpha(alpha)?;
    let (r1, r2) = circular_radii(a, b)?;
    Ok(residual(q, a.core(), b.core(), r1 * (1.0 - alpha), r2 * (1.0 - alpha), branch))
}

fn residual(q: Point2, a: Point2, b: Point2, c1: f64, c2: f64, branch: BranchTag) -> f64 {
    let d1 = q.distance(a);
    let d2 = q.distance(b);
    match branch {
        BranchTag::InversePoints => (d1 - c1) - (d2 - c2),
        BranchTag::SamePoints => (d1 - c1) - (c2 - d2),
    }
}

/// `A x^2 + 2 H x y + B y^2 + 2 G x + 2 F y + C = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConicCoefficients {
    pub a: f64,
    pub h: f64,
    pub b: f64,
    pub g: f64,
    pub f: f64,
    pub c: f64,
}

impl ConicCoefficients {
    pub fn to_array(&self) -> [f64; 6] {
        [self.a, self.h, self.b, self.g, self.f, self.c]
    }

    fn from_array(v: [f64; 6]) -> Self {
        ConicCoefficients { a: v[0], h: v[1], b: v[2], g: v[3], f: v[4], c: v[5] }
    }

    /// Divided by the coefficient of largest magnitude, which becomes 1.
    pub fn normalized(&self) -> Self {
        let v = self.to_array();
        let pivot = v.iter().copied().fold(0.0_f64, |m, x| if x.abs() > m.abs() { x } else { m });
        if pivot == 0.0 {
            return *self;
        }
        ConicCoefficients::from_array(v.map(|x| x / pivot))
    }

    /// `Delta = ABC + 2FGH - AF^2 - BG^2 - CH^2`.
    pub fn big_delta(&self) -> f64 {
        let ConicCoefficients { a, h, b, g, f, c } = *self;
        a * b * c + 2.0 * f * g * h - a * f * f - b * g * g - c * h * h
    }

    /// `delta = AB - H^2`.
    pub fn small_delta(&self) -> f64 {
        self.a * self.b - self.h * self.h
    }

    pub fn eval(&self, p: Point2) -> f64 {
        let ConicCoefficients { a, h, b, g, f, c } = *self;
        a * p.x * p.x + 2.0 * h * p.x * p.y + b * p.y * p.y + 2.0 * g * p.x + 2.0 * f * p.y + c
    }

    /// Largest coefficient difference after normalizing both sides.
    pub fn scale_distance(&self, other: &ConicCoefficients) -> f64 {
        let x = self.normalized().to_array();
        let y = other.normalized().to_array();
        x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
    }
}

/// Conic through the branch locus, from squaring its equation twice.
///
/// Squaring merges the branch with its conjugate locus, which is why sampled
/// curves come from the unsquared residual. For equal cut radii the inverse
/// branch is the perpendicular bisector, returned in linear form.
pub fn conic_coefficients(a: &FuzzyPoint, b: &FuzzyPoint, alpha: f64, branch: BranchTag) -> Result<ConicCoefficients> {
    check_alpha(alpha)?;
    let (r1, r2) = circular_radii(a, b)?;
    let s = 1.0 - alpha;
    let k = match branch {
        BranchTag::InversePoints => (r1 - r2) * s,
        BranchTag::SamePoints => (r1 + r2) * s,
    };
    let (pa, pb) = (a.core(), b.core());
    let u = 2.0 * (pa.x - pb.x);
    let v = 2.0 * (pa.y - pb.y);
    let w = k * k + pb.dot(pb) - pa.dot(pa);
    let raw = if k == 0.0 && branch == BranchTag::InversePoints {
        ConicCoefficients { a: 0.0, h: 0.0, b: 0.0, g: 0.5 * u, f: 0.5 * v, c: w }
    } else {
        let k2 = 4.0 * k * k;
        ConicCoefficients {
            a: u * u - k2,
            h: u * v,
            b: v * v - k2,
            g: u * w + k2 * pb.x,
            f: v * w + k2 * pb.y,
            c: w * w - k2 * pb.dot(pb),
        }
    };
    Ok(raw.normalized())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConicClass {
    Line,
    Ellipse,
    Hyperbola,
    Degenerate,
}

impl ConicClass {
    pub fn name(self) -> &'static str {
        match self {
            ConicClass::Line => "line",
            ConicClass::Ellipse => "ellipse",
            ConicClass::Hyperbola => "hyperbola",
            ConicClass::Degenerate => "degenerate",
        }
    }
}

/// Classifies a conic by `(Delta, delta)`.
///
/// The zero tests are relative, so the class depends neither on the overall
/// scale nor on where the origin sits: `delta` is compared against the
/// squared norm of the quadratic part, and for central conics `Delta` enters
/// through the constant `Delta / delta` left after translating to the centre.
/// A vanishing `delta` with nonzero `Delta` (a parabola) does not arise from
/// a proper midset and is reported as degenerate.
pub fn classify_conic(c: &ConicCoefficients) -> ConicClass {
    let quad = c.a * c.a + 2.0 * c.h * c.h + c.b * c.b;
    let full = quad + 2.0 * c.g * c.g + 2.0 * c.f * c.f + c.c * c.c;
    if full == 0.0 || quad <= TOL * TOL * full {
        return ConicClass::Line;
    }
    let small = c.small_delta();
    if (small / quad).abs() <= TOL {
        return if c.big_delta().abs() <= TOL * full.powf(1.5) { ConicClass::Line } else { ConicClass::Degenerate };
    }
    if (c.big_delta() / small).abs() <= TOL * quad.sqrt() {
        ConicClass::Degenerate
    } else if small > 0.0 {
        ConicClass::Ellipse
    } else {
        ConicClass::Hyperbola
    }
}

/// Relative position of the two cuts at one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverlapCase {
    NonOverlapping,
    ExternallyTangent,
    PartiallyOverlapping,
    InternallyTangent,
    FullyOverlapping,
    Concentric,
}

impl OverlapCase {
    pub fn name(self) -> &'static str {
        match self {
            OverlapCase::NonOverlapping => "non_overlapping",
            OverlapCase::ExternallyTangent => "externally_tangent",
            OverlapCase::PartiallyOverlapping => "partially_overlapping",
            OverlapCase::InternallyTangent => "internally_tangent",
            OverlapCase::FullyOverlapping => "fully_overlapping",
            OverlapCase::Concentric => "concentric",
        }
    }

    /// Branches that carry midset points in this configuration.
    pub fn active_branches(self) -> &'static [BranchTag] {
        match self {
            OverlapCase::NonOverlapping | OverlapCase::ExternallyTangent => &[BranchTag::InversePoints],
            OverlapCase::PartiallyOverlapping | OverlapCase::InternallyTangent => {
                &[BranchTag::InversePoints, BranchTag::SamePoints]
            }
            OverlapCase::FullyOverlapping | OverlapCase::Concentric => &[BranchTag::SamePoints],
        }
    }
}

/// Compares the core distance with the sum and difference of the cut radii,
/// treating equality within `1e-9` as tangency.
pub fn overlap_case(a: &FuzzyPoint, b: &FuzzyPoint, alpha: f64) -> Result<OverlapCase> {
    check_alpha(alpha)?;
    let (r1, r2) = circular_radii(a, b)?;
    let dc = a.core().distance(b.core());
    let s = 1.0 - alpha;
    let sum = (r1 + r2) * s;
    let diff = (r1 - r2).abs() * s;
    Ok(if dc <= TOL {
        OverlapCase::Concentric
    } else if dc > sum + TOL {
        OverlapCase::NonOverlapping
    } else if (dc - sum).abs() <= TOL {
        OverlapCase::ExternallyTangent
    } else if dc > diff + TOL {
        OverlapCase::PartiallyOverlapping
    } else if (dc - diff).abs() <= TOL {
        OverlapCase::InternallyTangent
    } else {
        OverlapCase::FullyOverlapping
    })
}

/// The branch whose curve is reported as the midset, when it is active.
pub fn accepted_branch(case: OverlapCase) -> Option<BranchTag> {
    case.active_branches().contains(&BranchTag::InversePoints).then_some(BranchTag::InversePoints)
}

/// Levels at which the configuration changes: the cuts separate above `n`
/// (`n2` is the same threshold), and stop containing one another above `n1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaThresholds {
    pub n: Option<f64>,
    pub n1: Option<f64>,
    pub n2: Option<f64>,
}

pub fn alpha_thresholds(a: &FuzzyPoint, b: &FuzzyPoint) -> Result<AlphaThresholds> {
    let (r1, r2) = circular_radii(a, b)?;
    let dc = a.core().distance(b.core());
    if dc <= TOL {
        return Ok(AlphaThresholds { n: None, n1: None, n2: None });
    }
    let n = (1.0 - dc / (r1 + r2)).clamp(0.0, 1.0);
    let n1 = (r1 != r2).then(|| (1.0 - dc / (r1 - r2).abs()).clamp(0.0, 1.0));
    Ok(AlphaThresholds { n: Some(n), n1, n2: Some(n) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchCurve {
    pub branch: BranchTag,
    pub polylines: Vec<Vec<Point2>>,
    pub conic: ConicCoefficients,
    pub class: ConicClass,
}

impl BranchCurve {
    pub fn points(&self) -> impl Iterator<Item = &Point2> {
        self.polylines.iter().flatten()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MidsetLevel {
    pub alpha: f64,
    pub case: OverlapCase,
    pub branches: Vec<BranchCurve>,
    pub accepted: Option<BranchTag>,
}

impl MidsetLevel {
    pub fn branch(&self, tag: BranchTag) -> Option<&BranchCurve> {
        self.branches.iter().find(|b| b.branch == tag)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MidsetResult {
    /// Configuration at `alpha = 0`.
    pub case: OverlapCase,
    pub thresholds: AlphaThresholds,
    pub bbox: BBox,
    pub resolution: usize,
    /// Sorted by alpha.
    pub levels: Vec<MidsetLevel>,
}

/// Union of both supports, inflated by 50% about its centre.
pub fn default_bbox(a: &FuzzyPoint, b: &FuzzyPoint) -> BBox {
    let support = |p: &FuzzyPoint| {
        let (p1, p2) = p.spread().radii();
        let c = p.core();
        BBox { xmin: c.x - p1, xmax: c.x + p1, ymin: c.y - p2, ymax: c.y + p2 }
    };
    let mut u = support(a).union(&support(b));
    // crisp points give a flat box
    let pad = 0.5 * u.width().max(u.height()).max(1.0);
    if u.width() <= 0.0 {
        u.xmin -= pad;
        u.xmax += pad;
    }
    if u.height() <= 0.0 {
        u.ymin -= pad;
        u.ymax += pad;
    }
    u.scaled(1.5)
}

/// Contours every active branch at one level on a `resolution`-cell grid.
/// The inverse branch keeps only points with `(d1 - d2)(c1 - c2) >= 0`.
pub fn sample_midset(
    a: &FuzzyPoint,
    b: &FuzzyPoint,
    alpha: f64,
    bbox: &BBox,
    resolution: usize,
) -> Result<MidsetLevel> {
    check_alpha(alpha)?;
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidSampling(format!("resolution {resolution} is below {MIN_RESOLUTION}")));
    }
    let (r1, r2) = circular_radii(a, b)?;
    let case = overlap_case(a, b, alpha)?;
    let (pa, pb) = (a.core(), b.core());
    let (c1, c2) = (r1 * (1.0 - alpha), r2 * (1.0 - alpha));

    let mut branches = Vec::new();
    for &branch in case.active_branches() {
        let lines = zero_contour(|q| residual(q, pa, pb, c1, c2, branch), bbox, resolution, CONTOUR_TOL);
        let polylines = match branch {
            BranchTag::InversePoints => retain_points(lines, |q| (q.distance(pa) - q.distance(pb)) * (c1 - c2) >= -TOL),
            BranchTag::SamePoints => lines,
        };
        let conic = conic_coefficients(a, b, alpha, branch)?;
        branches.push(BranchCurve { branch, polylines, conic, class: classify_conic(&conic) });
    }
    Ok(MidsetLevel { alpha, case, branches, accepted: accepted_branch(case) })
}

/// Midsets on every level of `grid`, computed concurrently.
pub fn compute_midset(
    a: &FuzzyPoint,
    b: &FuzzyPoint,
    grid: &AlphaGrid,
    bbox: Option<BBox>,
    resolution: usize,
) -> Result<MidsetResult> {
    let bbox = bbox.unwrap_or_else(|| default_bbox(a, b));
    let levels = grid
        .levels()
        .par_iter()
        .map(|&alpha| sample_midset(a, b, alpha, &bbox, resolution))
        .collect::<Result<Vec<_>>>()?;
    Ok(MidsetResult { case: overlap_case(a, b, 0.0)?, thresholds: alpha_thresholds(a, b)?, bbox, resolution, levels })
}

const MEMBERSHIP_LEVELS: usize = 101;

/// `sup { alpha : q lies on an active branch at level alpha }`, by scanning
/// a 101-level grid from the top and bisecting the first bracket found.
pub fn equidistant_membership(q: Point2, a: &FuzzyPoint, b: &FuzzyPoint) -> Result<f64> {
    circular_radii(a, b)?;
    let step = 1.0 / (MEMBERSHIP_LEVELS - 1) as f64;
    let value = |alpha: f64, branch: BranchTag| -> Option<f64> {
        let active = overlap_case(a, b, alpha).ok()?.active_branches().contains(&branch);
        active.then(|| branch_residual(q, a, b, alpha, branch).ok()).flatten()
    };
    let mut best: Option<f64> = None;
    for branch in [BranchTag::InversePoints, BranchTag::SamePoints] {
        let mut upper = value(1.0, branch);
        if upper.is_some_and(|r| r.abs() <= CONTOUR_TOL) {
            return Ok(1.0);
        }
        for k in (0..MEMBERSHIP_LEVELS - 1).rev() {
            let lo_alpha = k as f64 * step;
            let hi_alpha = (k + 1) as f64 * step;
            let lower = value(lo_alpha, branch);
            if let (Some(rl), Some(ru)) = (lower, upper) {
                let root = if rl.abs() <= CONTOUR_TOL {
                    Some(lo_alpha)
                } else if (rl < 0.0) != (ru < 0.0) {
                    Some(bisect_root(
                        |t| branch_residual(q, a, b, t, branch).unwrap_or(f64::NAN),
                        lo_alpha,
                        hi_alpha,
                        1e-12,
                    ))
                } else {
                    None
                };
                if let Some(r) = root {
                    best = Some(best.map_or(r, |b: f64| b.max(r)));
                    break;
                }
            }
            upper = lower;
        }
    }
    Ok(best.unwrap_or(0.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub t_list: Vec<f64>,
    pub alpha_levels: usize,
    pub resolution: usize,
    /// Point, level and scale combinations compared.
    pub comparisons: usize,
    pub equidistant_hits: usize,
    pub disagreements: usize,
    pub first_disagreement: Option<(Point2, f64, f64)>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
    }
}

/// Compares, on every grid node and on 11 levels, the zero set of
/// `dA - dB` with that of `t / (t + dA) - t / (t + dB)` for each `t`, where
/// `dA`, `dB` are the distances from the node to the two cuts. The closeness
/// tolerance is the distance tolerance scaled by the map's difference
/// quotient `t / ((t + dA)(t + dB))`.
pub fn invariance_check(
    a: &FuzzyPoint,
    b: &FuzzyPoint,
    t_list: &[f64],
    bbox: &BBox,
    resolution: usize,
) -> Result<InvarianceReport> {
    let (r1, r2) = circular_radii(a, b)?;
    for &t in t_list {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::NonPositiveScale(t));
        }
    }
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidSampling(format!("resolution {resolution} is below {MIN_RESOLUTION}")));
    }
    let levels = AlphaGrid::uniform(11)?;
    let n = resolution;
    let (pa, pb) = (a.core(), b.core());

    type NodeTally = (usize, usize, Option<(Point2, f64, f64)>);
    let tally: Vec<NodeTally> = (0..(n + 1) * (n + 1))
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % (n + 1), k / (n + 1));
            let q = Point2::new(
                bbox.xmin + bbox.width() * i as f64 / n as f64,
                bbox.ymin + bbox.height() * j as f64 / n as f64,
            );
            let (d1, d2) = (q.distance(pa), q.distance(pb));
            let mut hits = 0;
            let mut bad = 0;
            let mut first = None;
            for &alpha in levels.levels() {
                let s = 1.0 - alpha;
                let da = (d1 - r1 * s).max(0.0);
                let db = (d2 - r2 * s).max(0.0);
                let zero_d = (da - db).abs() <= TOL;
                for &t in t_list {
                    let rm = t / (t + da) - t / (t + db);
                    let zero_m = rm.abs() <= TOL * t / ((t + da) * (t + db));
                    if zero_d {
                        hits += 1;
                    }
                    if zero_d != zero_m {
                        bad += 1;
                        first.get_or_insert((q, alpha, t));
                    }
                }
            }
            (hits, bad, first)
        })
        .collect();

    let equidistant_hits = tally.iter().map(|t| t.0).sum();
    let disagreements = tally.iter().map(|t| t.1).sum();
    let first_disagreement = tally.iter().find_map(|t| t.2);
    Ok(InvarianceReport {
        t_list: t_list.to_vec(),
        alpha_levels: levels.len(),
        resolution,
        comparisons: (n + 1) * (n + 1) * levels.len() * t_list.len(),
        equidistant_hits,
        disagreements,
        first_disagreement,
    })
}
