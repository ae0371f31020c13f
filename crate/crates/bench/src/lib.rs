//! Shared fixtures for the benchmarks.

use fuzgeo_core::FuzzyPoint;

/// Circular point at (1, 0) and elliptical point at (5, 2), spread (1, 1.5).
pub fn elliptical_pair() -> (FuzzyPoint, FuzzyPoint) {
    (
        FuzzyPoint::circular(1.0, 0.0, 1.0).expect("valid point"),
        FuzzyPoint::elliptical(5.0, 2.0, 1.0, 1.5).expect("valid point"),
    )
}

/// Circular points of radii 1 and 2 with cores five apart.
pub fn circular_pair() -> (FuzzyPoint, FuzzyPoint) {
    (
        FuzzyPoint::circular(0.0, 0.0, 1.0).expect("valid point"),
        FuzzyPoint::circular(5.0, 0.0, 2.0).expect("valid point"),
    )
}
