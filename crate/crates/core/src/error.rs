use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants fall into two groups: genuine errors (bad input, inconsistent
/// operands, internal failures) and mathematical refusals, where the input
/// is well formed but a precondition of the requested invariant does not
/// hold. [`Error::is_refusal`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("operation `{op}` is not supported over {field}")]
    UnsupportedField { op: &'static str, field: String },

    #[error("invalid field specification: {0}")]
    InvalidField(String),

    #[error("frame mismatch: {0}")]
    FrameMismatch(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("not a unit: constant term vanishes")]
    NotAUnit,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial has degree 0 in variable {0}")]
    DegreeZero(usize),

    #[error("not pseudo-Weierstrass: f lies in the ideal of the u-variables")]
    NotPseudoWeierstrass,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("no generic cut found after {attempts} attempts; a field extension is required")]
    NeedsFieldExtension { attempts: usize },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that are mathematical refusals rather than errors:
    /// the input was understood but the invariant is not defined on it.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::Precondition(_)
                | Error::NotPseudoWeierstrass
                | Error::InvalidCut(_)
                | Error::NeedsFieldExtension { .. }
                | Error::UnsupportedField { .. }
                | Error::NotAUnit
                | Error::ZeroPolynomial(_)
                | Error::NotHomogeneous
                | Error::DegreeZero(_)
        )
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
