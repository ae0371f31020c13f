//! The closeness-valued fuzzy metric `M(A, B, t) = t / (t + d(A, B))` and
//! axiom checks for it and for the Kaleva-Seikkala formulation of the
//! fuzzy distance.

use rayon::prelude::*;

use crate::fuzzy_core::{tri_add, AlphaGrid, FuzzyNumber, FuzzyPoint, Interval, TriangularTriple};
use crate::fuzzy_distance::{distance_alpha, fuzzy_distance};
use crate::{Error, Result};

const CONTINUITY_STEP: f64 = 1e-6;
const CONTINUITY_JUMP: f64 = 1e-4;
const SYMMETRY_TOL: f64 = 1e-9;
const ORDER_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TNorm {
    Product,
    Minimum,
}

impl TNorm {
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Product => a * b,
            TNorm::Minimum => a.min(b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Product => "product",
            TNorm::Minimum => "minimum",
        }
    }
}

/// Fuzzy degree of closeness at scale `t`; cuts lie in `(0, 1]`.
#[derive(Clone, Debug)]
pub struct FuzzyCloseness {
    pub t: f64,
    pub value: FuzzyNumber,
}

fn check_scale(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveScale(t))
    }
}

/// Image of a fuzzy distance under `x -> t / (t + x)`.
pub fn closeness_from_distance(distance: &FuzzyNumber, t: f64) -> Result<FuzzyCloseness> {
    check_scale(t)?;
    Ok(FuzzyCloseness { t, value: distance.map_decreasing(move |x| t / (t + x)) })
}

pub fn metric_md(a: &FuzzyPoint, b: &FuzzyPoint, t: f64) -> Result<FuzzyCloseness> {
    closeness_from_distance(&fuzzy_distance(a, b), t)
}

/// Width of the support of `M(A, B, t)`.
pub fn closeness_spread(a: &FuzzyPoint, b: &FuzzyPoint, t: f64) -> Result<f64> {
    Ok(metric_md(a, b, t)?.value.cut(0.0).width())
}

fn closeness_triple(d: &TriangularTriple, t: f64) -> TriangularTriple {
    d.map_decreasing(|x| t / (t + x))
}

fn closeness_interval(d: &Interval, t: f64) -> Interval {
    Interval::new(t / (t + d.hi), t / (t + d.lo))
}

/// Outcome of the "almost equals one" test for an ordered pair of points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck {
    pub i: usize,
    pub j: usize,
    pub cores_equal: bool,
    pub spreads_equal: bool,
    /// The core of `M` is exactly 1.
    pub almost_one: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadrangleViolation {
    pub triple: (usize, usize, usize),
    pub t: f64,
    pub s: f64,
    pub lhs: [f64; 3],
    pub rhs: [f64; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricAxiomReport {
    pub tnorm: TNorm,
    pub positivity_failures: usize,
    pub identity: Vec<IdentityCheck>,
    pub identity_failures: usize,
    pub symmetry_failures: usize,
    pub max_symmetry_error: f64,
    pub quadrangle_checked: usize,
    pub quadrangle_failures: usize,
    pub quadrangle_cut_checked: usize,
    pub quadrangle_cut_failures: usize,
    pub first_quadrangle_violation: Option<QuadrangleViolation>,
    pub continuity_failures: usize,
    pub max_continuity_jump: f64,
}

impl MetricAxiomReport {
    /// All axioms hold, with the quadrangle inequality judged on summaries.
    pub fn passed(&self) -> bool {
        self.positivity_failures == 0
            && self.identity_failures == 0
            && self.symmetry_failures == 0
            && self.quadrangle_failures == 0
            && self.continuity_failures == 0
    }
}

/// Distance summaries and sampled cuts for every ordered pair.
struct PairTable {
    n: usize,
    triples: Vec<TriangularTriple>,
    cuts: Vec<Vec<Interval>>,
}

impl PairTable {
    fn build(points: &[FuzzyPoint], grid: &AlphaGrid) -> PairTable {
        let n = points.len();
        let rows: Vec<(TriangularTriple, Vec<Interval>)> = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (a, b) = (&points[k / n], &points[k % n]);
                let cuts: Vec<Interval> = grid
                    .levels()
                    .iter()
                    .map(|&alpha| distance_alpha(a, b, alpha).expect("grid levels lie in [0, 1]").interval())
                    .collect();
                let first = cuts.first().copied().unwrap_or(Interval::point(0.0));
                let mid = a.core().distance(b.core());
                let triple =
                    TriangularTriple::new(first.lo.min(mid), mid, first.hi.max(mid)).expect("ordered by construction");
                (triple, cuts)
            })
            .collect();
        let (triples, cuts) = rows.into_iter().unzip();
        PairTable { n, triples, cuts }
    }

    fn triple(&self, i: usize, j: usize) -> &TriangularTriple {
        &self.triples[i * self.n + j]
    }

    fn cuts(&self, i: usize, j: usize) -> &[Interval] {
        &self.cuts[i * self.n + j]
    }
}

fn quadrangle_grid() -> AlphaGrid {
    AlphaGrid::uniform(11).expect("11 levels")
}

/// Checks positivity, "almost equals one" iff equal cores, symmetry, the
/// t-norm quadrangle inequality and continuity in `t` on every triple.
///
/// The quadrangle inequality `T(M(A,B,t), M(B,C,s)) <= M(A,C,t+s)` is judged
/// componentwise on summary triples and reported separately on 11 cut levels.
pub fn check_metric_axioms(points: &[FuzzyPoint], t_samples: &[f64], tnorm: TNorm) -> Result<MetricAxiomReport> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: points.len() });
    }
    for &t in t_samples {
        check_scale(t)?;
    }
    let n = points.len();
    let grid = quadrangle_grid();
    let table = PairTable::build(points, &grid);

    let mut positivity_failures = 0;
    let mut identity = Vec::new();
    let mut symmetry_failures = 0;
    let mut max_symmetry_error = 0.0_f64;
    let mut continuity_failures = 0;
    let mut max_continuity_jump = 0.0_f64;

    for i in 0..n {
        for j in 0..n {
            let d = table.triple(i, j);
            for &t in t_samples {
                let m = closeness_triple(d, t);
                if m.l() <= 0.0 || m.u() > 1.0 {
                    positivity_failures += 1;
                }
                let m_next = closeness_triple(d, t + CONTINUITY_STEP);
                let jump = m.max_abs_diff(&m_next);
                max_continuity_jump = max_continuity_jump.max(jump);
                if jump > CONTINUITY_JUMP {
                    continuity_failures += 1;
                }
            }
            if j < i {
                continue;
            }
            let t = t_samples.first().copied().unwrap_or(1.0);
            identity.push(IdentityCheck {
                i,
                j,
                cores_equal: points[i].core() == points[j].core(),
                spreads_equal: points[i].spread().approx_eq(&points[j].spread(), 1e-12),
                almost_one: closeness_triple(d, t).m() == 1.0,
            });
            let err = table
                .cuts(i, j)
                .iter()
                .zip(table.cuts(j, i))
                .map(|(x, y)| (x.lo - y.lo).abs().max((x.hi - y.hi).abs()))
                .fold(d.max_abs_diff(table.triple(j, i)), f64::max);
            max_symmetry_error = max_symmetry_error.max(err);
            if err > SYMMETRY_TOL {
                symmetry_failures += 1;
            }
        }
    }
    let identity_failures = identity.iter().filter(|c| c.almost_one != c.cores_equal).count();

    let mut quadrangle_checked = 0;
    let mut quadrangle_failures = 0;
    let mut quadrangle_cut_checked = 0;
    let mut quadrangle_cut_failures = 0;
    let mut first_quadrangle_violation = None;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                for &t in t_samples {
                    for &s in t_samples {
                        let m_ab = closeness_triple(table.triple(a, b), t);
                        let m_bc = closeness_triple(table.triple(b, c), s);
                        let m_ac = closeness_triple(table.triple(a, c), t + s);
                        let lhs = [
                            tnorm.apply(m_ab.l(), m_bc.l()),
                            tnorm.apply(m_ab.m(), m_bc.m()),
                            tnorm.apply(m_ab.u(), m_bc.u()),
                        ];
                        let rhs = m_ac.to_array();
                        quadrangle_checked += 1;
                        if lhs.iter().zip(&rhs).any(|(l, r)| l > &(r + ORDER_TOL)) {
                            quadrangle_failures += 1;
                            first_quadrangle_violation.get_or_insert(QuadrangleViolation {
                                triple: (a, b, c),
                                t,
                                s,
                                lhs,
                                rhs,
                            });
                        }
                        for k in 0..grid.len() {
                            let x = closeness_interval(&table.cuts(a, b)[k], t);
                            let y = closeness_interval(&table.cuts(b, c)[k], s);
                            let z = closeness_interval(&table.cuts(a, c)[k], t + s);
                            let lo = tnorm.apply(x.lo, y.lo);
                            let hi = tnorm.apply(x.hi, y.hi);
                            quadrangle_cut_checked += 1;
                            if lo > z.lo + ORDER_TOL || hi > z.hi + ORDER_TOL {
                                quadrangle_cut_failures += 1;
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(MetricAxiomReport {
        tnorm,
        positivity_failures,
        identity,
        identity_failures,
        symmetry_failures,
        max_symmetry_error,
        quadrangle_checked,
        quadrangle_failures,
        quadrangle_cut_checked,
        quadrangle_cut_failures,
        first_quadrangle_violation,
        continuity_failures,
        max_continuity_jump,
    })
}

/// Componentwise comparison `d(x, y) <= d(x, z) + d(z, y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsTriangle {
    pub lhs: TriangularTriple,
    pub rhs: TriangularTriple,
    pub holds: [bool; 3],
}

impl KsTriangle {
    pub fn all(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

fn compare_triangle(lhs: TriangularTriple, rhs: TriangularTriple) -> KsTriangle {
    let l = lhs.to_array();
    let r = rhs.to_array();
    let holds = [0, 1, 2].map(|k| l[k] <= r[k] + 1e-9 * (1.0 + r[k].abs()));
    KsTriangle { lhs, rhs, holds }
}

pub fn ks_triangle(x: &FuzzyPoint, y: &FuzzyPoint, z: &FuzzyPoint) -> KsTriangle {
    let lhs = fuzzy_distance(x, y).triple();
    let rhs = tri_add(fuzzy_distance(x, z).triple(), fuzzy_distance(z, y).triple());
    compare_triangle(lhs, rhs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KsReport {
    pub identity_failures: usize,
    pub symmetry_failures: usize,
    pub triangle_checked: usize,
    /// Failures per summary component (lower, middle, upper).
    pub triangle_failures: [usize; 3],
    pub first_triangle_violation: Option<((usize, usize, usize), KsTriangle)>,
}

impl KsReport {
    pub fn passed(&self) -> bool {
        self.identity_failures == 0 && self.symmetry_failures == 0 && self.triangle_failures == [0; 3]
    }
}

/// Checks the Kaleva-Seikkala conditions with `L = min`, `R = max` in their
/// summary form on every ordered triple of distinct points.
pub fn check_ks_axioms(points: &[FuzzyPoint]) -> Result<KsReport> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: points.len() });
    }
    let n = points.len();
    let grid = AlphaGrid::from_levels(vec![0.0, 1.0]).expect("valid levels");
    let table = PairTable::build(points, &grid);

    let mut identity_failures = 0;
    let mut symmetry_failures = 0;
    for i in 0..n {
        for j in i..n {
            let zero_core = table.triple(i, j).m() == 0.0;
            if zero_core != (points[i].core() == points[j].core()) {
                identity_failures += 1;
            }
            if table.triple(i, j).max_abs_diff(table.triple(j, i)) > SYMMETRY_TOL {
                symmetry_failures += 1;
            }
        }
    }

    let mut triangle_checked = 0;
    let mut triangle_failures = [0; 3];
    let mut first_triangle_violation = None;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x == y || y == z || x == z {
                    continue;
                }
                let rhs = tri_add(*table.triple(x, z), *table.triple(z, y));
                let check = compare_triangle(*table.triple(x, y), rhs);
                triangle_checked += 1;
                for (count, holds) in triangle_failures.iter_mut().zip(check.holds) {
                    *count += usize::from(!holds);
                }
                if !check.all() {
                    first_triangle_violation.get_or_insert(((x, y, z), check));
                }
            }
        }
    }

    Ok(KsReport { identity_failures, symmetry_failures, triangle_checked, triangle_failures, first_triangle_violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reference_pair() -> (FuzzyPoint, FuzzyPoint) {
        (FuzzyPoint::circular(1.0, 0.0, 1.0).unwrap(), FuzzyPoint::elliptical(5.0, 2.0, 1.0, 1.5).unwrap())
    }

    #[test]
    fn tnorm_laws_on_grid() {
        let xs: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        for tn in [TNorm::Product, TNorm::Minimum] {
            for &a in &xs {
                assert_eq!(tn.apply(a, 1.0), a);
                for &b in &xs {
                    assert_eq!(tn.apply(a, b), tn.apply(b, a));
                    for &c in &xs {
                        assert_abs_diff_eq!(tn.apply(tn.apply(a, b), c), tn.apply(a, tn.apply(b, c)), epsilon = 1e-15);
                        if b <= c {
                            assert!(tn.apply(a, b) <= tn.apply(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reference_closeness() {
        let (a, b) = reference_pair();
        for t in [0.5, 1.0, 3.0] {
            let m = metric_md(&a, &b, t).unwrap();
            assert_abs_diff_eq!(m.value.triple().m(), t / (t + 4.472_135_955), epsilon = 1e-9);
        }
        let cut = metric_md(&a, &b, 1.0).unwrap().value.cut(0.0);
        assert_abs_diff_eq!(cut.lo, 0.131502, epsilon = 1e-6);
        assert_abs_diff_eq!(cut.hi, 0.295810, epsilon = 1e-6);
        assert_abs_diff_eq!(closeness_spread(&a, &b, 1.0).unwrap(), 0.164308, epsilon = 1e-6);
    }

    #[test]
    fn crisp_self_closeness_is_one() {
        let p = FuzzyPoint::crisp(2.0, -1.0).unwrap();
        let m = metric_md(&p, &p, 0.7).unwrap();
        assert_eq!(m.value.triple().to_array(), [1.0, 1.0, 1.0]);
    }

    #[test]
    fn scale_must_be_positive() {
        let (a, b) = reference_pair();
        assert_eq!(metric_md(&a, &b, 0.0).unwrap_err(), Error::NonPositiveScale(0.0));
        assert!(metric_md(&a, &b, -1.0).is_err());
    }

    #[test]
    fn standard_metric_on_crisp_triangle() {
        let pts = [
            FuzzyPoint::crisp(0.0, 0.0).unwrap(),
            FuzzyPoint::crisp(3.0, 0.0).unwrap(),
            FuzzyPoint::crisp(3.0, 4.0).unwrap(),
        ];
        for tn in [TNorm::Product, TNorm::Minimum] {
            let r = check_metric_axioms(&pts, &[0.5, 1.0, 2.0], tn).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.quadrangle_cut_failures, 0);
        }
        assert!(check_ks_axioms(&pts).unwrap().passed());
    }

    #[test]
    fn identity_separates_core_and_spread() {
        let pts = [
            FuzzyPoint::circular(0.0, 0.0, 1.0).unwrap(),
            FuzzyPoint::circular(0.0, 0.0, 2.0).unwrap(),
            FuzzyPoint::circular(4.0, 0.0, 1.0).unwrap(),
        ];
        let r = check_metric_axioms(&pts, &[1.0], TNorm::Product).unwrap();
        let c = r.identity.iter().find(|c| c.i == 0 && c.j == 1).unwrap();
        assert!(c.cores_equal);
        assert!(!c.spreads_equal);
        assert!(c.almost_one);
        assert_eq!(r.identity_failures, 0);
    }

    #[test]
    fn collinear_triangle_components() {
        let x = FuzzyPoint::circular(0.0, 0.0, 1.0).unwrap();
        let z = FuzzyPoint::circular(2.0, 0.0, 1.0).unwrap();
        let y = FuzzyPoint::circular(5.0, 0.0, 1.0).unwrap();
        let check = ks_triangle(&x, &y, &z);
        assert_abs_diff_eq!(check.lhs.m(), check.rhs.m(), epsilon = 1e-12);
        assert!(check.holds[1] && check.holds[2]);
        // the cuts of x and z overlap, so the lower bound through z collapses
        assert_abs_diff_eq!(check.lhs.l(), 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(check.rhs.l(), 1.0, epsilon = 1e-9);
        assert!(!check.holds[0]);
    }

    #[test]
    fn too_few_points() {
        let p = FuzzyPoint::crisp(0.0, 0.0).unwrap();
        assert_eq!(check_ks_axioms(&[p, p]).unwrap_err(), Error::TooFewPoints { needed: 3, got: 2 });
    }
}
