use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinate is not finite: ({x}, {y})")]
    NonFinite { x: f64, y: f64 },

    #[error("spread radii must be positive and finite, got ({p1}, {p2})")]
    InvalidSpread { p1: f64, p2: f64 },

    #[error("circular spread requires equal radii, got ({p1}, {p2})")]
    UnequalCircularRadii { p1: f64, p2: f64 },

    #[error("alpha level {0} is outside [0, 1]")]
    InvalidAlpha(f64),

    #[error("line coefficients a and b are both zero")]
    DegenerateLine,

    #[error("line does not pass through the fuzzy point core (offset {offset})")]
    LineMissesCore { offset: f64 },

    #[error("fuzzy point cores coincide; the joining line is undefined")]
    CoincidentCores,

    #[error("operation requires circular spreads")]
    NotCircular,

    #[error("scale parameter t must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("point lies outside the support of its fuzzy point")]
    OutsideSupport,

    #[error("triangular triple must satisfy l <= m <= u, got ({l}, {m}, {u})")]
    UnorderedTriple { l: f64, m: f64, u: f64 },

    #[error("invalid sampling parameter: {0}")]
    InvalidSampling(String),

    #[error("at least {needed} fuzzy points are required, got {got}")]
    TooFewPoints { needed: usize, got: usize },
}
