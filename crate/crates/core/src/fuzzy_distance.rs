//! Fuzzy distance between fuzzy points as a nested family of alpha-cut
//! intervals, with its membership function.

use crate::fuzzy_core::{check_alpha, membership_by_bisection, FuzzyNumber, FuzzyPoint, Interval, Point2};
use crate::line_geometry::normalize_half_turn;
use crate::optimize::{periodic_maximize, periodic_minimize};
use crate::{Error, Result};

const COARSE_ANGLES: usize = 64;
const ANGLE_TOL: f64 = 1e-10;
const ALPHA_TOL: f64 = 1e-10;

/// Extremal boundary distances at one alpha level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerAlphaDistance {
    pub alpha: f64,
    /// Lower endpoint of the cut; zero when the two alpha-cuts overlap.
    pub lo: f64,
    /// Minimum over theta of the lower cross-boundary distance, before the
    /// overlap rule is applied.
    pub lambda_lo: f64,
    /// Distance between the cores.
    pub mid: f64,
    pub hi: f64,
    pub argmin: f64,
    pub argmax: f64,
    /// The optimizer fell back to a dense grid for at least one extremum.
    pub fallback: bool,
}

impl PerAlphaDistance {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }
}

/// Combined spread radii and core offset of a pair, `d = a - b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceMembershipParams {
    pub r1: f64,
    pub r2: f64,
    pub d1: f64,
    pub d2: f64,
    pub dc: f64,
}

impl DistanceMembershipParams {
    pub fn new(a: &FuzzyPoint, b: &FuzzyPoint) -> Self {
        let (p1, p2) = a.spread().radii();
        let (q1, q2) = b.spread().radii();
        let d = a.core() - b.core();
        DistanceMembershipParams { r1: p1 + q1, r2: p2 + q2, d1: d.x, d2: d.y, dc: d.norm() }
    }

    /// Closed-form grade at a fixed angle: `1 - s` for the smallest
    /// `s in [0, 1]` with `|d + s (R1 cos theta, R2 sin theta)| = x`.
    pub fn grade_at(&self, x: f64, theta: f64) -> Option<f64> {
        let (sin, cos) = theta.sin_cos();
        let w = Point2::new(self.r1 * cos, self.r2 * sin);
        let d = Point2::new(self.d1, self.d2);
        let qa = w.dot(w);
        let qb = 2.0 * d.dot(w);
        let qc = self.dc * self.dc - x * x;
        if qa == 0.0 {
            return if qc == 0.0 { Some(1.0) } else { None };
        }
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return None;
        }
        let sq = disc.sqrt();
        let mut roots = [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)];
        roots.sort_by(f64::total_cmp);
        roots.into_iter().find(|s| (-1e-12..=1.0 + 1e-12).contains(s)).map(|s| 1.0 - s.clamp(0.0, 1.0))
    }
}

/// `(lambda_lo, lambda_hi)`: the smaller and larger of the two distances
/// between opposite alpha-cut boundary points along `theta`.
pub fn endpoint_distances(a: &FuzzyPoint, b: &FuzzyPoint, alpha: f64, theta: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let pa = a.alpha_cut_boundary(alpha, theta);
    let pb = b.alpha_cut_boundary(alpha, theta);
    let d1 = pa.under.distance(pb.over);
    let d2 = pa.over.distance(pb.under);
    Ok((d1.min(d2), d1.max(d2)))
}

/// Global extrema of the cross-boundary distance over `theta in [0, 2pi)`.
///
/// Both extrema come from `f(theta) = |b - a - (1 - alpha) w(theta)|` with
/// `w = ((p1 + q1) cos theta, (p2 + q2) sin theta)`: the other boundary
/// pairing is the same function shifted by `pi`.
pub fn distance_alpha(a: &FuzzyPoint, b: &FuzzyPoint, alpha: f64) -> Result<PerAlphaDistance> {
    check_alpha(alpha)?;
    let params = DistanceMembershipParams::new(a, b);
    let (dx, dy) = (-params.d1, -params.d2);
    let dc = params.dc;
    let s = 1.0 - alpha;
    let (r1, r2) = (params.r1 * s, params.r2 * s);

    if r1 == 0.0 && r2 == 0.0 {
        return Ok(PerAlphaDistance {
            alpha,
            lo: dc,
            lambda_lo: dc,
            mid: dc,
            hi: dc,
            argmin: 0.0,
            argmax: 0.0,
            fallback: false,
        });
    }

    let f = |t: f64| {
        let (sin, cos) = t.sin_cos();
        (dx - r1 * cos).hypot(dy - r2 * sin)
    };
    let min = periodic_minimize(f, COARSE_ANGLES, ANGLE_TOL);
    let max = periodic_maximize(f, COARSE_ANGLES, ANGLE_TOL);

    // the core offset inside the combined cut ellipse means the cuts intersect
    let overlap = dx * dx * r2 * r2 + dy * dy * r1 * r1 < r1 * r1 * r2 * r2;
    let lo = if overlap { 0.0 } else { min.value.max(0.0).min(dc) };

    Ok(PerAlphaDistance {
        alpha,
        lo,
        lambda_lo: min.value,
        mid: dc,
        hi: max.value.max(dc),
        argmin: min.arg,
        argmax: max.arg,
        fallback: min.fallback || max.fallback,
    })
}

/// The fuzzy distance as an alpha-cut function with summary
/// `(lo(0), d(core_a, core_b), hi(0))`.
pub fn fuzzy_distance(a: &FuzzyPoint, b: &FuzzyPoint) -> FuzzyNumber {
    let (a, b) = (*a, *b);
    FuzzyNumber::from_cuts(move |alpha| {
        distance_alpha(&a, &b, alpha).expect("cut level is clamped into [0, 1]").interval()
    })
}

/// `sup { alpha : x in [lo(alpha), hi(alpha)] }`.
pub fn distance_membership(a: &FuzzyPoint, b: &FuzzyPoint, x: f64) -> f64 {
    let cut = |alpha: f64| distance_alpha(a, b, alpha).map(|d| d.interval()).unwrap_or(Interval::new(0.0, -1.0));
    membership_by_bisection(cut, x, ALPHA_TOL)
}

/// Grade of `x` by bisection together with the closed-form grade evaluated
/// at the extremal angle of the level found.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MembershipCrossCheck {
    pub grade: f64,
    pub angle: f64,
    pub closed_form: Option<f64>,
}

impl MembershipCrossCheck {
    pub fn residual(&self) -> Option<f64> {
        self.closed_form.map(|c| c - self.grade)
    }
}

pub fn membership_cross_check(a: &FuzzyPoint, b: &FuzzyPoint, x: f64) -> MembershipCrossCheck {
    let grade = distance_membership(a, b, x);
    let level = distance_alpha(a, b, grade.clamp(0.0, 1.0)).expect("grade lies in [0, 1]");
    let angle = if x <= level.mid { level.argmin } else { level.argmax };
    let closed_form = DistanceMembershipParams::new(a, b).grade_at(x, angle);
    MembershipCrossCheck { grade, angle, closed_form }
}

/// Slope angle of the line joining two circular cores, in `[0, pi)`.
pub fn prop_core_angle(a: &FuzzyPoint, b: &FuzzyPoint) -> Result<f64> {
    if a.spread().radius().is_none() || b.spread().radius().is_none() {
        return Err(Error::NotCircular);
    }
    let d = a.core() - b.core();
    if d.x == 0.0 && d.y == 0.0 {
        return Err(Error::CoincidentCores);
    }
    Ok(normalize_half_turn(d.y.atan2(d.x)))
}
