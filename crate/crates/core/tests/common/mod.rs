//! Independent brute-force oracles and seeded random fixtures shared by the
//! integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use fuzgeo_core::{endpoint_distances, ConvexShape, FuzzyPoint, Point2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const THETA_SAMPLES: usize = 10_000;

pub fn seed() -> u64 {
    std::env::var("FUZGEO_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(42)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}

/// Core uniform on `[-5, 5]^2`, radii uniform on `[0.2, 1.5]`, circular or
/// elliptical with equal odds.
pub fn random_point(rng: &mut impl Rng) -> FuzzyPoint {
    let x = rng.random_range(-5.0..5.0);
    let y = rng.random_range(-5.0..5.0);
    if rng.random_bool(0.5) {
        FuzzyPoint::circular(x, y, rng.random_range(0.2..1.5)).unwrap()
    } else {
        FuzzyPoint::elliptical(x, y, rng.random_range(0.2..1.5), rng.random_range(0.2..1.5)).unwrap()
    }
}

pub fn random_circular(rng: &mut impl Rng) -> FuzzyPoint {
    FuzzyPoint::circular(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0), rng.random_range(0.2..1.5)).unwrap()
}

/// Extrema of the cross-boundary distances on a uniform theta grid:
/// `(min lambda_lo, argmin, max lambda_hi, argmax)`.
pub fn theta_grid_extrema(a: &FuzzyPoint, b: &FuzzyPoint, alpha: f64) -> (f64, f64, f64, f64) {
    let mut best = (f64::INFINITY, 0.0, f64::NEG_INFINITY, 0.0);
    for k in 0..THETA_SAMPLES {
        let theta = TAU * k as f64 / THETA_SAMPLES as f64;
        let (lo, hi) = endpoint_distances(a, b, alpha, theta).unwrap();
        if lo < best.0 {
            best.0 = lo;
            best.1 = theta;
        }
        if hi > best.2 {
            best.2 = hi;
            best.3 = theta;
        }
    }
    best
}

/// Angular distance on the circle of circumference `period`.
pub fn angle_gap(x: f64, y: f64, period: f64) -> f64 {
    let d = (x - y).rem_euclid(period);
    d.min(period - d)
}

fn boundary_samples(s: &ConvexShape, n: usize) -> Vec<Point2> {
    (0..n).map(|k| s.boundary(TAU * k as f64 / n as f64)).collect()
}

fn inside(s: &ConvexShape, p: Point2) -> bool {
    match *s {
        ConvexShape::Point(c) => p == c,
        ConvexShape::Disk { center, r } => p.distance(center) <= r,
        ConvexShape::Ellipse { center, p1, p2 } => ((p.x - center.x) / p1).hypot((p.y - center.y) / p2) <= 1.0,
    }
}

fn directed(from: &[Point2], to_shape: &ConvexShape, to: &[Point2]) -> f64 {
    from.iter()
        .map(
            |&p| {
                if inside(to_shape, p) {
                    0.0
                } else {
                    to.iter().map(|&q| p.distance(q)).fold(f64::INFINITY, f64::min)
                }
            },
        )
        .fold(0.0, f64::max)
}

/// Hausdorff distance from `n` boundary samples per set. For convex sets the
/// directed supremum is attained on the boundary, and the distance to a set
/// is zero inside it and the boundary distance outside.
pub fn sampled_hausdorff(s1: &ConvexShape, s2: &ConvexShape, n: usize) -> f64 {
    let b1 = boundary_samples(s1, n);
    let b2 = boundary_samples(s2, n);
    directed(&b1, s2, &b2).max(directed(&b2, s1, &b1))
}

/// Plain bisection on a sign change.
pub fn bisection_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
