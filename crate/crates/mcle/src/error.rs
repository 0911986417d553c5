//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size limit: {0}")]
    SizeLimit(String),

    #[error("malformed pairing: {0}")]
    MalformedPairing(String),

    #[error("pattern induction failed: {0}")]
    Induction(String),

    #[error("infeasible pattern: {0}")]
    InfeasiblePattern(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("accuracy error: {context} (achieved {achieved:.3e}, wanted {wanted:.3e})")]
    Accuracy {
        context: String,
        achieved: f64,
        wanted: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    #[error("integrator blow-up: {0}")]
    IntegratorBlowup(String),

    #[error("resampling event failed: {0}")]
    EventFailure(String),

    #[error("grid resolution too coarse: {0}")]
    Resolution(String),

    #[error("ambiguous cut: {0}")]
    AmbiguousCut(String),

    #[error("unknown experiment: {0}")]
    UnknownExperiment(String),

    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
