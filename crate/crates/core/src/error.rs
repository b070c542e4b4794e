use thiserror::Error;

/// Errors raised by torus arithmetic, seed construction and mutation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("elements live over different quantum tori")]
    TorusMismatch,

    #[error("division by the zero element")]
    DivisionByZero,

    /// Exact division failed: the dividend is not in the left (resp. right)
    /// ideal generated by the divisor. When raised from a cluster recurrence
    /// this is a Laurent-phenomenon violation.
    #[error("not divisible: {context}")]
    NotDivisible { context: String },

    #[error("matrix is not skew-symmetric at ({row},{col})")]
    NotSkewSymmetric { row: usize, col: usize },

    #[error("principal part is not skew-symmetrizable")]
    NotSkewSymmetrizable,

    #[error("divisibility violated: d[{col}] = {d} does not divide b[{row}][{col}] = {entry}")]
    DivisibilityViolation {
        row: usize,
        col: usize,
        d: i64,
        entry: i64,
    },

    /// -Lambda * Btilde is not of the form [D; 0] with positive diagonal D.
    /// `row`, `col` locate the first violating entry of the product.
    #[error("{}", not_compatible_msg(*.row, *.col, *.value))]
    NotCompatible { row: usize, col: usize, value: i64 },

    #[error("index {index} out of range (valid: 0..{limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

fn not_compatible_msg(row: usize, col: usize, value: i64) -> String {
    if row == col {
        format!("pair not compatible: diagonal entry ({row},{col}) of -Lambda*Btilde is {value}, not positive")
    } else {
        format!("pair not compatible: entry ({row},{col}) of -Lambda*Btilde is {value}, expected 0")
    }
}

pub type Result<T> = std::result::Result<T, Error>;
