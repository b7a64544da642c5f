//! Crate-wide error type.
//!
//! Everything fallible funnels into [`Error`]. A few variants are load-bearing
//! for callers (not just diagnostics):
//!
//! * [`Error::ImperfectField`] — an operation that is only sound over perfect
//!   fields (Jordan-Chevalley, squarefree parts, socle machinery) was asked to
//!   run over a rational function field in characteristic p.
//! * [`Error::NoPthRoot`] — a coefficient p-th root was required and does not
//!   exist in the field. This is how the imperfection actually surfaces in the
//!   squarefree computation.
//! * [`Error::NonCommutingGenerators`] — the input matrices do not commute, so
//!   there is no commutative algebra to analyze.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("element of {found} used where an element of {expected} was expected")]
    FieldMismatch { expected: String, found: String },

    #[error("{op} is only defined over finite fields (field is {field})")]
    NotFinite { op: String, field: String },

    #[error("{op} requires a perfect coefficient field; {field} is imperfect")]
    ImperfectField { op: String, field: String },

    #[error("{element} has no p-th root in {field}")]
    NoPthRoot { element: String, field: String },

    #[error("invalid field description: {0}")]
    InvalidField(String),

    #[error("parse error in {what}: {detail}")]
    Parse { what: String, detail: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is singular")]
    Singular,

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("generators {i} and {j} do not commute")]
    NonCommutingGenerators { i: usize, j: usize },

    #[error("subspace is not invariant under the algebra")]
    NotInvariant,

    #[error("matrix has no cyclic vector (minimal polynomial degree {min_poly_deg} < dimension {dim})")]
    NotCyclic { min_poly_deg: usize, dim: usize },

    #[error("generator {index} does not lie in the algebra generated by the candidate")]
    NotInGeneratedAlgebra { index: usize },

    #[error("module is not uniserial")]
    NotUniserial,

    #[error("no root in {field}: polynomial degree {deg} does not divide extension degree {ext}")]
    NoRoot { deg: usize, ext: u32, field: String },

    #[error("{what} exceeds the supported limit ({limit}): got {actual}")]
    GuardExceeded {
        what: String,
        limit: u64,
        actual: u64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand used by the parsers.
    pub fn parse(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse {
            what: what.into(),
            detail: detail.into(),
        }
    }

    /// Wraps an error with the name of the pipeline stage it occurred in.
    pub fn staged(stage: impl Into<String>, source: Error) -> Self {
        Error::Stage {
            stage: stage.into(),
            source: Box::new(source),
        }
    }

    /// Unwraps nested stage tags down to the underlying cause.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}
