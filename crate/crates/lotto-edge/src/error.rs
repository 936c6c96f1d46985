use thiserror::Error;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A lottery configuration violates a structural invariant.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The bounding-curve classifier was invoked for a lottery outside its
    /// hypotheses (payout rate F >= 0.8 and at least 500 distinct tickets).
    #[error("classifier hypotheses not met: {0}")]
    HypothesesNotMet(String),

    /// The break-even curve is only defined for sales-to-jackpot ratios in
    /// (0, 1/F); beyond that the expected rate of return is always negative.
    #[error("x = {x} outside break-even curve domain (0, {limit})")]
    CurveDomain { x: f64, limit: f64 },

    /// A linear solve hit a pivot too small relative to its row scale.
    #[error("singular or near-singular covariance matrix")]
    SingularMatrix,

    /// Vector/matrix dimensions disagree.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Not enough observations to estimate a statistic.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Exhaustive enumeration was requested for a problem too large for it.
    #[error("size guard: {0}")]
    SizeGuard(String),

    /// A bundled or user-supplied data file failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable short name of the variant, used in CLI error reporting.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Domain(_) => "DomainError",
            Error::HypothesesNotMet(_) => "HypothesesNotMet",
            Error::CurveDomain { .. } => "CurveDomainError",
            Error::SingularMatrix => "SingularMatrix",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InsufficientData(_) => "InsufficientData",
            Error::SizeGuard(_) => "SizeGuard",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
