//! Lines in the plane, the rigid map `T` into line coordinates, fuzzy numbers
//! carried along a line, and same/inverse point pairing.

use std::f64::consts::PI;

use crate::fuzzy_core::{FuzzyNumber, FuzzyPoint, Interval, Point2};
use crate::{Error, Result};

const ON_LINE_TOL: f64 = 1e-9;

/// The line `a x + b y = c` with an orientation angle in `[0, pi)` and a
/// reference point from which the line coordinate `s` is measured.
///
/// The reference point is the line's intercept with the y-axis, or with the
/// x-axis for vertical lines. Positive `s` runs along `(cos theta, sin theta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineSpec {
    a: f64,
    b: f64,
    c: f64,
    theta: f64,
    anchor: Point2,
}

impl LineSpec {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) || (a == 0.0 && b == 0.0) {
            return Err(Error::DegenerateLine);
        }
        let theta = normalize_half_turn((-a).atan2(b));
        let anchor = if b != 0.0 { Point2::new(0.0, c / b) } else { Point2::new(c / a, 0.0) };
        Ok(LineSpec { a, b, c, theta, anchor })
    }

    /// Line through `p` and `q`.
    pub fn through_points(p: Point2, q: Point2) -> Result<Self> {
        if p == q {
            return Err(Error::CoincidentCores);
        }
        let a = q.y - p.y;
        let b = p.x - q.x;
        LineSpec::new(a, b, a * p.x + b * p.y)
    }

    /// Line through `p` at angle `psi` with the x-axis.
    pub fn through_point_at_angle(p: Point2, psi: f64) -> Result<Self> {
        let (s, c) = psi.sin_cos();
        LineSpec::new(s, -c, s * p.x - c * p.y)
    }

    /// Same line, with `s` measured from `anchor` instead.
    pub fn with_anchor(self, anchor: Point2) -> Result<Self> {
        let offset = self.offset(anchor);
        if offset.abs() > ON_LINE_TOL * (1.0 + anchor.norm()) {
            return Err(Error::LineMissesCore { offset });
        }
        Ok(LineSpec { anchor, ..self })
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn anchor(&self) -> Point2 {
        self.anchor
    }

    pub fn direction(&self) -> Point2 {
        Point2::unit(self.theta)
    }

    /// Foot of the perpendicular from the origin.
    pub fn foot(&self) -> Point2 {
        let n2 = self.a * self.a + self.b * self.b;
        Point2::new(self.a * self.c / n2, self.b * self.c / n2)
    }

    /// Signed perpendicular distance of `p` from the line.
    pub fn offset(&self, p: Point2) -> f64 {
        (self.a * p.x + self.b * p.y - self.c) / self.a.hypot(self.b)
    }

    /// `(s, n)`: coordinate along the line and signed normal offset.
    pub fn transform(&self, q: Point2) -> (f64, f64) {
        let (sin, cos) = self.theta.sin_cos();
        let dx = q.x - self.anchor.x;
        let dy = q.y - self.anchor.y;
        (dx * cos + dy * sin, -dx * sin + dy * cos)
    }

    pub fn inverse_transform(&self, s: f64, n: f64) -> Point2 {
        let (sin, cos) = self.theta.sin_cos();
        Point2::new(self.anchor.x + s * cos - n * sin, self.anchor.y + s * sin + n * cos)
    }
}

pub(crate) fn normalize_half_turn(angle: f64) -> f64 {
    let t = angle.rem_euclid(PI);
    if t >= PI {
        0.0
    } else {
        t
    }
}

/// A fuzzy number on a line obtained from a fuzzy point whose core is on it.
#[derive(Clone, Debug)]
pub struct ProjectedFuzzyNumber {
    pub line: LineSpec,
    pub value: FuzzyNumber,
}

impl ProjectedFuzzyNumber {
    pub fn core_coordinate(&self) -> f64 {
        self.value.triple().m()
    }
}

/// Projects a fuzzy point onto a line through its core.
///
/// The alpha-cut endpoints sit at the distances of the boundary points
/// `core -/+ (1 - alpha) (p1 cos theta, p2 sin theta)` from the core, laid off
/// on either side of the projected core along the line.
pub fn project_fuzzy_point(p: &FuzzyPoint, line: &LineSpec) -> Result<ProjectedFuzzyNumber> {
    let core = p.core();
    let offset = line.offset(core);
    if offset.abs() > ON_LINE_TOL * (1.0 + core.norm()) {
        return Err(Error::LineMissesCore { offset });
    }
    let (s0, _) = line.transform(core);
    let (p1, p2) = p.spread().radii();
    let (sin, cos) = line.theta().sin_cos();
    let reach = (p1 * cos).hypot(p2 * sin);
    let value = FuzzyNumber::from_cuts(move |alpha| {
        let w = reach * (1.0 - alpha);
        Interval::new(s0 - w, s0 + w)
    });
    Ok(ProjectedFuzzyNumber { line: *line, value })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Same,
    Inverse,
    Neither,
}

/// Classifies support points `p` of `a` and `q` of `b` as same points,
/// inverse points, or neither.
///
/// A point on the line joining the cores counts as lying on both sides; the
/// pair is then decided by whether the core-to-point segments point the same
/// way (same) or opposite ways (inverse).
pub fn classify_pair(a: &FuzzyPoint, b: &FuzzyPoint, p: Point2, q: Point2) -> Result<PairKind> {
    if !a.in_support(p) || !b.in_support(q) {
        return Err(Error::OutsideSupport);
    }
    let axis = b.core() - a.core();
    let axis_len = axis.norm();
    if axis_len == 0.0 {
        return Err(Error::CoincidentCores);
    }

    if (a.membership_at(p) - b.membership_at(q)).abs() > 1e-9 {
        return Ok(PairKind::Neither);
    }
    let u = p - a.core();
    let v = q - b.core();
    let scale = u.norm() * v.norm();
    if scale > 0.0 && u.cross(v).abs() > 1e-9 * scale {
        return Ok(PairKind::Neither);
    }

    let side_p = axis.cross(p - a.core()) / axis_len;
    let side_q = axis.cross(q - a.core()) / axis_len;
    let on_line = side_p.abs() <= ON_LINE_TOL || side_q.abs() <= ON_LINE_TOL;
    let same = if on_line { u.dot(v) >= 0.0 } else { (side_p > 0.0) == (side_q > 0.0) };
    Ok(if same { PairKind::Same } else { PairKind::Inverse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn identity_line() {
        let line = LineSpec::new(0.0, 1.0, 0.0).unwrap();
        assert_eq!(line.theta(), 0.0);
        let (s, n) = line.transform(Point2::new(3.0, 0.0));
        assert_abs_diff_eq!(s, 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(n, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn example_line_coordinates() {
        let line = LineSpec::new(1.0, -2.0, 1.0).unwrap();
        assert_abs_diff_eq!(line.theta(), 0.463_647_609, epsilon = 1e-9);
        assert_abs_diff_eq!(line.transform(Point2::new(1.0, 0.0)).0, 1.118_033_989, epsilon = 1e-9);
        assert_abs_diff_eq!(line.transform(Point2::new(5.0, 2.0)).0, 5.590_169_94, epsilon = 1e-8);
        // both points lie on the line
        assert_abs_diff_eq!(line.transform(Point2::new(5.0, 2.0)).1, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn through_points_matches_explicit_line() {
        let l1 = LineSpec::through_points(Point2::new(1.0, 0.0), Point2::new(5.0, 2.0)).unwrap();
        let l2 = LineSpec::new(1.0, -2.0, 1.0).unwrap();
        assert_abs_diff_eq!(l1.theta(), l2.theta(), epsilon = 1e-15);
        assert_abs_diff_eq!(l1.anchor().y, l2.anchor().y, epsilon = 1e-15);
        let l3 = LineSpec::through_point_at_angle(Point2::new(1.0, 0.0), l2.theta()).unwrap();
        assert_abs_diff_eq!(l3.anchor().y, -0.5, epsilon = 1e-12);
    }

    #[test]
    fn vertical_line_uses_x_intercept() {
        let line = LineSpec::new(2.0, 0.0, 6.0).unwrap();
        assert_abs_diff_eq!(line.theta(), FRAC_PI_2, epsilon = 1e-15);
        assert_eq!(line.anchor(), Point2::new(3.0, 0.0));
        assert_eq!(line.foot(), Point2::new(3.0, 0.0));
        assert_abs_diff_eq!(line.transform(Point2::new(3.0, 4.0)).0, 4.0, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_line_rejected() {
        assert_eq!(LineSpec::new(0.0, 0.0, 1.0), Err(Error::DegenerateLine));
        assert!(LineSpec::through_points(Point2::ORIGIN, Point2::ORIGIN).is_err());
    }

    #[test]
    fn projection_examples() {
        let line = LineSpec::new(1.0, -2.0, 1.0).unwrap();
        let a = FuzzyPoint::circular(1.0, 0.0, 1.0).unwrap();
        let t = project_fuzzy_point(&a, &line).unwrap().value.triple();
        assert_abs_diff_eq!(t.l(), 0.118_033_989, epsilon = 1e-9);
        assert_abs_diff_eq!(t.m(), 1.118_033_989, epsilon = 1e-9);
        assert_abs_diff_eq!(t.u(), 2.118_033_989, epsilon = 1e-9);

        let b = FuzzyPoint::elliptical(5.0, 2.0, 1.0, 1.5).unwrap();
        let t = project_fuzzy_point(&b, &line).unwrap().value.triple();
        assert_abs_diff_eq!(t.l(), 4.472_135_955, epsilon = 1e-9);
        assert_abs_diff_eq!(t.m(), 5.590_169_94, epsilon = 1e-8);
        assert_abs_diff_eq!(t.u(), 6.708_203_932, epsilon = 1e-9);
    }

    #[test]
    fn projection_requires_core_on_line() {
        let line = LineSpec::new(1.0, -2.0, 1.0).unwrap();
        let p = FuzzyPoint::circular(0.0, 3.0, 1.0).unwrap();
        assert!(matches!(project_fuzzy_point(&p, &line), Err(Error::LineMissesCore { .. })));
    }

    #[test]
    fn circular_projection_has_radius_half_width() {
        let p = FuzzyPoint::circular(2.0, -1.0, 0.75).unwrap();
        for psi in [0.0, 0.3, 1.2, 2.9] {
            let line = LineSpec::through_point_at_angle(p.core(), psi).unwrap();
            let proj = project_fuzzy_point(&p, &line).unwrap();
            let cut = proj.value.cut(0.0);
            assert_abs_diff_eq!(cut.width(), 1.5, epsilon = 1e-12);
            assert_abs_diff_eq!(proj.value.cut(0.6).width(), 0.6, epsilon = 1e-12);
        }
    }

    #[test]
    fn pair_classification_examples() {
        let a = FuzzyPoint::circular(0.0, 0.0, 1.0).unwrap();
        let b = FuzzyPoint::circular(5.0, 0.0, 1.0).unwrap();
        let p = Point2::new(0.0, 0.5);
        assert_eq!(classify_pair(&a, &b, p, Point2::new(5.0, 0.5)).unwrap(), PairKind::Same);
        assert_eq!(classify_pair(&a, &b, p, Point2::new(5.0, -0.5)).unwrap(), PairKind::Inverse);
        assert_eq!(classify_pair(&a, &b, p, Point2::new(5.0, 0.2)).unwrap(), PairKind::Neither);
    }

    #[test]
    fn pair_on_core_line_uses_direction() {
        let a = FuzzyPoint::circular(0.0, 0.0, 1.0).unwrap();
        let b = FuzzyPoint::circular(5.0, 0.0, 1.0).unwrap();
        let inv = classify_pair(&a, &b, Point2::new(-0.5, 0.0), Point2::new(5.5, 0.0)).unwrap();
        assert_eq!(inv, PairKind::Inverse);
        let same = classify_pair(&a, &b, Point2::new(0.5, 0.0), Point2::new(5.5, 0.0)).unwrap();
        assert_eq!(same, PairKind::Same);
        assert_eq!(classify_pair(&a, &b, Point2::new(2.0, 0.0), Point2::new(5.0, 0.0)), Err(Error::OutsideSupport));
    }
}
