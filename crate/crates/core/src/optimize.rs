//! One-dimensional search helpers: golden-section minimization, periodic
//! grid-bracketed global extrema, and bracketed root refinement.

use std::f64::consts::TAU;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of `f` on `[a, b]` down to an
/// abscissa bracket of width `tol`. Returns `(x_min, f_min)`.
pub fn golden_section_minimize(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 200 iterations shrink any bracket below f64 resolution
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Result of a global search over the period `[0, 2pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodicExtremum {
    /// Angle in `[0, 2pi)`.
    pub arg: f64,
    pub value: f64,
    /// The refined value was worse than the coarse grid and a dense grid was used instead.
    pub fallback: bool,
}

/// Global minimum of a `2pi`-periodic function: every local minimum of a
/// `coarse`-point grid is refined by golden-section search.
pub fn periodic_minimize(f: impl Fn(f64) -> f64, coarse: usize, tol: f64) -> PeriodicExtremum {
    let n = coarse.max(8);
    let step = TAU / n as f64;
    let samples: Vec<f64> = (0..n).map(|i| f(i as f64 * step)).collect();

    let (grid_i, grid_v) =
        samples.iter().copied().enumerate().min_by(|a, b| a.1.total_cmp(&b.1)).expect("grid is non-empty");

    let mut best = PeriodicExtremum { arg: grid_i as f64 * step, value: grid_v, fallback: false };
    let grid_max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if grid_max - grid_v <= f64::EPSILON * grid_v.abs().max(grid_max.abs()) {
        // flat: every angle is extremal
        return best;
    }
    for i in 0..n {
        let prev = samples[(i + n - 1) % n];
        let next = samples[(i + 1) % n];
        if samples[i] > prev || samples[i] > next {
            continue;
        }
        let centre = i as f64 * step;
        let (x, v) = golden_section_minimize(&f, centre - step, centre + step, tol);
        if v < best.value {
            best = PeriodicExtremum { arg: x.rem_euclid(TAU), value: v, fallback: false };
        }
    }

    if best.value > grid_v {
        // refinement lost the bracket; settle for a dense grid
        let dense = 64 * n;
        let dstep = TAU / dense as f64;
        let (i, v) =
            (0..dense).map(|i| (i, f(i as f64 * dstep))).min_by(|a, b| a.1.total_cmp(&b.1)).expect("grid is non-empty");
        best = PeriodicExtremum { arg: i as f64 * dstep, value: v, fallback: true };
    }
    best
}

pub fn periodic_maximize(f: impl Fn(f64) -> f64, coarse: usize, tol: f64) -> PeriodicExtremum {
    let r = periodic_minimize(|x| -f(x), coarse, tol);
    PeriodicExtremum { value: -r.value, ..r }
}

/// Bisection for a sign change of `f` on `[a, b]`; `f(a)` and `f(b)` must
/// have opposite signs (or one of them is zero).
pub fn bisect_root(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    if f(b) == 0.0 {
        return b;
    }
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Illinois (modified regula falsi) refinement of a root of `f` bracketed on
/// `[0, 1]` with endpoint values `f0`, `f1` of opposite sign. Stops when
/// `|f| <= ftol`. Returns the parameter.
pub fn illinois(f: impl Fn(f64) -> f64, f0: f64, f1: f64, ftol: f64) -> f64 {
    let (mut a, mut b) = (0.0_f64, 1.0_f64);
    let (mut fa, mut fb) = (f0, f1);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let mut side = 0i8;
    let mut c = a;
    for _ in 0..100 {
        c = (a * fb - b * fa) / (fb - fa);
        if !c.is_finite() {
            c = 0.5 * (a + b);
        }
        let fc = f(c);
        if fc.abs() <= ftol || (b - a).abs() < 1e-15 {
            return c;
        }
        if (fc < 0.0) == (fb < 0.0) {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    c
}
