use thiserror::Error;

/// Errors produced by construction, validation and numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lens parameters (p={p}, q={q}): {reason}")]
    InvalidLens { p: i64, q: i64, reason: String },

    #[error("point with r={r} is not in the chart overlap (requires 0 < r < 1)")]
    NotInOverlap { r: f64 },

    #[error("profile construction failed: {0}")]
    ProfileConstruction(String),

    #[error("derivative order {0} not supported (analytic path stops at 4)")]
    UnsupportedOrder(usize),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("not a contact form: {0}")]
    NotContact(String),

    #[error("invalid rotation data: p*phi0 + q = {value} must be positive")]
    InvalidRotation { value: f64 },

    #[error("degenerate coefficient Wronskian at r={r}: form is not contact there")]
    NotContactAtPoint { r: f64 },

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("operation requires a {expected} form but classification says {actual}")]
    WrongClass {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("model violation: {0}")]
    ModelViolation(String),

    #[error("deformation parameter {epsilon} is inadmissible (needs 1 + eps*mu > 0 on [0,1])")]
    InvalidDeformation { epsilon: f64 },

    #[error("deformation pipeline failure: {0}")]
    DeformationPipeline(String),

    #[error("forms are not comparable: {0}")]
    NotComparable(String),

    #[error("metric gauge violation: {0}")]
    MetricGauge(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("descriptor schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
