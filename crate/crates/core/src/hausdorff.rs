//! Hausdorff distance between convex alpha-cuts, and the fuzzy Hausdorff
//! distance obtained by projecting both fuzzy points onto the line through
//! their cores.

use crate::fuzzy_core::{check_alpha, FuzzyNumber, FuzzyPoint, Interval, Point2, SpreadKind};
use crate::line_geometry::{project_fuzzy_point, LineSpec, ProjectedFuzzyNumber};
use crate::optimize::periodic_maximize;
use crate::Result;

const DIRECTIONS: usize = 360;

/// Compact convex sets with closed-form support functions. Ellipses are
/// axis-aligned.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConvexShape {
    Point(Point2),
    Disk { center: Point2, r: f64 },
    Ellipse { center: Point2, p1: f64, p2: f64 },
}

impl ConvexShape {
    /// The alpha-cut of a fuzzy point.
    pub fn alpha_cut(p: &FuzzyPoint, alpha: f64) -> Result<ConvexShape> {
        check_alpha(alpha)?;
        let center = p.core();
        let (r1, r2) = p.cut_radii(alpha);
        Ok(match p.spread().kind() {
            _ if r1 == 0.0 && r2 == 0.0 => ConvexShape::Point(center),
            SpreadKind::Crisp => ConvexShape::Point(center),
            SpreadKind::Circular => ConvexShape::Disk { center, r: r1 },
            SpreadKind::Elliptical => ConvexShape::Ellipse { center, p1: r1, p2: r2 },
        })
    }

    pub fn center(&self) -> Point2 {
        match *self {
            ConvexShape::Point(c) | ConvexShape::Disk { center: c, .. } | ConvexShape::Ellipse { center: c, .. } => c,
        }
    }

    fn semi_axes(&self) -> (f64, f64) {
        match *self {
            ConvexShape::Point(_) => (0.0, 0.0),
            ConvexShape::Disk { r, .. } => (r, r),
            ConvexShape::Ellipse { p1, p2, .. } => (p1, p2),
        }
    }

    /// `max { x . u : x in S }` for a unit vector `u`.
    pub fn support(&self, u: Point2) -> f64 {
        let (p1, p2) = self.semi_axes();
        self.center().dot(u) + (p1 * u.x).hypot(p2 * u.y)
    }

    /// Boundary point at parameter `t` (the centre for a point).
    pub fn boundary(&self, t: f64) -> Point2 {
        let (p1, p2) = self.semi_axes();
        let (s, c) = t.sin_cos();
        self.center() + Point2::new(p1 * c, p2 * s)
    }

    fn as_disk(&self) -> Option<(Point2, f64)> {
        match *self {
            ConvexShape::Point(c) => Some((c, 0.0)),
            ConvexShape::Disk { center, r } => Some((center, r)),
            ConvexShape::Ellipse { center, p1, p2 } if p1 == p2 => Some((center, p1)),
            ConvexShape::Ellipse { .. } => None,
        }
    }
}

/// Hausdorff distance between two compact convex sets, computed as the
/// largest gap between their support functions.
pub fn crisp_hausdorff(s1: &ConvexShape, s2: &ConvexShape) -> f64 {
    if let (Some((c1, r1)), Some((c2, r2))) = (s1.as_disk(), s2.as_disk()) {
        return c1.distance(c2) + (r1 - r2).abs();
    }
    let gap = |t: f64| {
        let u = Point2::unit(t);
        (s1.support(u) - s2.support(u)).abs()
    };
    periodic_maximize(gap, DIRECTIONS, 1e-12).value
}

/// Fuzzy Hausdorff distance with the two projections it was built from.
#[derive(Clone, Debug)]
pub struct HausdorffResult {
    pub value: FuzzyNumber,
    /// Line through both cores.
    pub line: LineSpec,
    pub projected: (ProjectedFuzzyNumber, ProjectedFuzzyNumber),
}

impl HausdorffResult {
    /// Left and right spreads of the projected numbers:
    /// `[m_a - l_a, u_a - m_a, m_b - l_b, u_b - m_b]`.
    pub fn gammas(&self) -> [f64; 4] {
        let a = self.projected.0.value.triple();
        let b = self.projected.1.value.triple();
        [a.m() - a.l(), a.u() - a.m(), b.m() - b.l(), b.u() - b.m()]
    }
}

/// Projects both points onto the line through their cores and takes the
/// distance between inverse endpoints at every level:
/// `[max(0, b_lo - a_hi), b_hi - a_lo]` with `b` the point further along the
/// line.
pub fn fuzzy_hausdorff(a: &FuzzyPoint, b: &FuzzyPoint) -> Result<HausdorffResult> {
    let line = LineSpec::through_points(a.core(), b.core())?;
    let pa = project_fuzzy_point(a, &line)?;
    let pb = project_fuzzy_point(b, &line)?;
    let (left, right) = if pb.core_coordinate() >= pa.core_coordinate() {
        (pa.value.clone(), pb.value.clone())
    } else {
        (pb.value.clone(), pa.value.clone())
    };
    let value = FuzzyNumber::from_cuts(move |alpha| {
        let l = left.cut(alpha);
        let r = right.cut(alpha);
        Interval::new((r.lo - l.hi).max(0.0), r.hi - l.lo)
    });
    Ok(HausdorffResult { value, line, projected: (pa, pb) })
}
