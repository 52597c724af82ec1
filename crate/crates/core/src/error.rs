use thiserror::Error;

/// Errors raised by the operator, quadrature and experiment layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported exponent p = {p}: {reason}")]
    UnsupportedExponent { p: f64, reason: String },

    #[error("point outside the admissible range: {0}")]
    OutOfDomain(String),

    #[error("derivative of order {requested} requested but the field is only C^{available}")]
    InsufficientSmoothness { requested: u32, available: u32 },

    #[error(
        "singularity not integrable at requested parameters \
         (partial sum {partial_sum:e} after {panels} graded panels)"
    )]
    NotIntegrable { partial_sum: f64, panels: usize },

    #[error("tail radius {radius} is below the required radius {required}")]
    TailRadius { radius: f64, required: f64 },

    #[error("scalar solve did not converge: {0}")]
    NoConvergence(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("table error: {0}")]
    Table(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
