use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("minimal polynomial is not valid: {0}")]
    InvalidMinPoly(String),

    #[error("element {0} is not totally negative")]
    NotTotallyNegative(String),

    #[error("form is degenerate (zero determinant)")]
    DegenerateForm,

    #[error("matrix is not hermitian: entry ({row}, {col}) differs from the conjugate of its transpose")]
    NotHermitian { row: usize, col: usize },

    #[error("operands live over different fields")]
    FieldMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("search budget {budget} exhausted while {what}")]
    BudgetExceeded { what: String, budget: u64 },

    #[error("closure exceeded cap of {cap} elements; the group is likely infinite")]
    CapExceeded { cap: usize },

    #[error("matrix is not invertible")]
    Singular,

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not an involution: {0}")]
    NotAnInvolution(String),

    #[error("the other admissible class could not be certified: {0}")]
    UnknownClass(String),

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
