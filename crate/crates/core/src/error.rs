use thiserror::Error;

/// Errors raised by the numerical modules.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("unsupported dimension d = {0} (only d = 1 and d = 2 are supported)")]
    UnsupportedDimension(usize),
    #[error("sphere resolution {0} must be even and at least 8")]
    BadResolution(usize),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("exponent {0} is below 1")]
    ExponentBelowOne(f64),
    #[error("(p, q) = ({p}, {q}) is not on the scaling line for d = {d}")]
    OffScalingLine { d: usize, p: f64, q: f64 },
    #[error("cap level {0} is below 2 (cap sidelength would exceed 1/4)")]
    CapLevelTooCoarse(u32),
    #[error("empty cap family")]
    EmptyCapFamily,
    #[error("degenerate profile pair (both profiles vanish)")]
    DegeneratePair,
    #[error("scale {lambda} is unresolved: only {nodes} sphere nodes within the cap of radius lambda (need 8)")]
    UnresolvedScale { lambda: f64, nodes: usize },
    #[error("field vanishes; cannot normalize")]
    ZeroField,
    #[error("field is not L^p normalized (norm = {0})")]
    NotNormalized(f64),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, LabError>;
