//! Error types shared across the crate.
//!
//! Two enums: [`DslError`] for everything the expression language can signal
//! (parse errors carry 1-based byte offsets into the source; evaluation
//! errors carry the offset of the responsible node), and [`Error`] for the
//! rest of the library. `DslError` converts into `Error` so higher layers
//! can propagate uniformly.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors from the metric expression language.
///
/// Positions are 1-based byte offsets into the source string; a truncated
/// input reports position `len + 1` (one past the end).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DslError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown identifier '{name}' at offset {pos}")]
    UnknownIdentifier { pos: usize, name: String },

    #[error("{function} expects {expected} argument(s), found {found} (offset {pos})")]
    Arity {
        pos: usize,
        function: String,
        expected: usize,
        found: usize,
    },

    #[error("index {index} out of range for '{name}' (dimension {dim}) at offset {pos}")]
    IndexOutOfRange {
        pos: usize,
        name: String,
        index: usize,
        dim: usize,
    },

    #[error("division by a near-zero value at offset {pos}")]
    DivisionNearZero { pos: usize },

    #[error("square root of a negative real value at offset {pos}")]
    SqrtOfNegativeReal { pos: usize },

    #[error("{function} is not differentiable near zero (argument too small) at offset {pos}")]
    NearZeroNonsmooth { pos: usize, function: String },

    #[error(
        "expression value has imaginary part {imaginary:e} (tolerance {tolerance:e}); \
         a metric expression must evaluate to a real number"
    )]
    ResidualImaginaryPart { imaginary: f64, tolerance: f64 },
}

impl DslError {
    /// Source offset the error points at, if it has one.
    pub fn position(&self) -> Option<usize> {
        match self {
            Self::Syntax { pos, .. }
            | Self::UnknownIdentifier { pos, .. }
            | Self::Arity { pos, .. }
            | Self::IndexOutOfRange { pos, .. }
            | Self::DivisionNearZero { pos }
            | Self::SqrtOfNegativeReal { pos }
            | Self::NearZeroNonsmooth { pos, .. } => Some(*pos),
            Self::ResidualImaginaryPart { .. } => None,
        }
    }
}

/// Library-level errors.
#[derive(Debug, Error)]
pub enum Error {
    /// A sample lies outside a metric's domain (base point out of range or
    /// zero tangent vector).
    #[error("domain violation: {0}")]
    Domain(String),

    /// The caller combined incompatible pieces (wrong kind, wrong lengths,
    /// wrong mode).
    #[error("usage error: {0}")]
    Usage(String),

    /// A computation produced non-finite or otherwise unusable numbers.
    #[error("numerics failure: {0}")]
    Numerics(String),

    /// The fundamental tensor is not positive definite where the operation
    /// requires inverting it.
    #[error("singular metric: {0}")]
    SingularMetric(String),

    /// No zoo entry under this name.
    #[error("unknown metric '{0}'")]
    UnknownMetric(String),

    /// A parameter failed validation at construction.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An expression-language error, forwarded.
    #[error(transparent)]
    Dsl(#[from] DslError),
}
