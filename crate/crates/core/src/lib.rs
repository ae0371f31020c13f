//! Computational fuzzy geometry in the plane.
//!
//! The crate models fuzzy points with circular or elliptical conic membership,
//! the fuzzy distance between them as an alpha-cut interval family, the
//! closeness-valued fuzzy metric `t / (t + d)`, a fuzzy Hausdorff distance
//! obtained by projecting onto the line through both cores, and fuzzy
//! equidistant sets (midsets) of two circular fuzzy points.
//!
//! Everything is a pure function over immutable values.

pub mod contour;
pub mod equidistant;
mod error;
pub mod fuzzy_core;
pub mod fuzzy_distance;
pub mod fuzzy_metric;
pub mod hausdorff;
pub mod line_geometry;
pub mod optimize;

pub use error::{Error, Result};

pub use equidistant::{
    accepted_branch, alpha_thresholds, branch_residual, classify_conic, compute_midset, conic_coefficients,
    default_bbox, equidistant_membership, invariance_check, overlap_case, sample_midset, AlphaThresholds, BBox,
    BranchCurve, BranchTag, ConicClass, ConicCoefficients, InvarianceReport, MidsetLevel, MidsetResult, OverlapCase,
};
pub use fuzzy_core::{
    fuzzy_leq, fuzzy_order, tri_add, AlphaBoundaryPair, AlphaGrid, FuzzyNumber, FuzzyOrder, FuzzyPoint, Interval,
    Point2, Spread, SpreadKind, TriangularTriple,
};
pub use fuzzy_distance::{
    distance_alpha, distance_membership, endpoint_distances, fuzzy_distance, membership_cross_check, prop_core_angle,
    DistanceMembershipParams, MembershipCrossCheck, PerAlphaDistance,
};
pub use fuzzy_metric::{
    check_ks_axioms, check_metric_axioms, closeness_from_distance, closeness_spread, ks_triangle, metric_md,
    FuzzyCloseness, IdentityCheck, KsReport, KsTriangle, MetricAxiomReport, QuadrangleViolation, TNorm,
};
pub use hausdorff::{crisp_hausdorff, fuzzy_hausdorff, ConvexShape, HausdorffResult};
pub use line_geometry::{classify_pair, project_fuzzy_point, LineSpec, PairKind, ProjectedFuzzyNumber};
