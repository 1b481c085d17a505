use thiserror::Error;

/// Errors raised by the geometry, flow and oracle layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("frame construction failed: {0}")]
    FrameConstructionFailed(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("totally umbilical hypersurface is empty: {0}")]
    EmptyHypersurface(String),
    #[error("time {t} out of range: {bound}")]
    TimeOutOfRange { t: f64, bound: String },
    #[error("time {t} outside the gauge domain: {bound}")]
    GaugeDomain { t: f64, bound: String },
    #[error("closed form at t = {t} overflows the scalar type")]
    Overflow { t: f64 },
    #[error("no ideal-boundary limit: {0}")]
    NoLimit(String),
    #[error("totally geodesic submanifolds are stationary and have no backward limit")]
    StationaryNoLimit,
    #[error("chart degenerate: {0}")]
    ChartDegenerate(String),
    #[error("insufficient samples: need at least {needed}, found {found}")]
    InsufficientSamples { needed: usize, found: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
