use thiserror::Error;

/// Errors raised by the arithmetic substrate and the generators built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division is not exact (nonzero remainder)")]
    DivisionNotExact,
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("operation requires a univariate polynomial")]
    UnivariateOnly,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("insufficient terms: {terms} supplied, recurrence length {length} not stable")]
    InsufficientTerms { terms: usize, length: usize },
    #[error("row {n} would have {entries} entries, budget is {budget}")]
    RowTooLarge {
        n: usize,
        entries: u128,
        budget: usize,
    },
    #[error("coefficient support of {cells} cells exceeds budget {budget}")]
    SupportTooLarge { cells: u128, budget: usize },
    #[error("pattern dimension {pattern} does not match array dimension {array}")]
    DimensionMismatch { pattern: usize, array: usize },
    #[error("window pattern has no positive exponent")]
    EmptyPattern,
    #[error("kernel has zero constant term")]
    KernelConstantTermZero,
    #[error("reversal symmetry requested but p or q is not palindromic")]
    SymmetryInvalid,
    #[error("closure exceeded budget of {budget} patterns")]
    ClosureBudgetExceeded { budget: usize },
    #[error("exponential fit disagrees with held-out value at n={n}")]
    FitInconsistent { n: usize },
    #[error("matrix is not diagonally symmetrizable (edge {row},{col})")]
    NotSymmetrizable { row: usize, col: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionNotExact => "DivisionNotExact",
            Error::VariableMismatch { .. } => "VariableMismatch",
            Error::UnivariateOnly => "UnivariateOnly",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::InsufficientTerms { .. } => "InsufficientTerms",
            Error::RowTooLarge { .. } => "RowTooLarge",
            Error::SupportTooLarge { .. } => "SupportTooLarge",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyPattern => "EmptyPattern",
            Error::KernelConstantTermZero => "KernelConstantTermZero",
            Error::SymmetryInvalid => "SymmetryInvalid",
            Error::ClosureBudgetExceeded { .. } => "ClosureBudgetExceeded",
            Error::FitInconsistent { .. } => "FitInconsistent",
            Error::NotSymmetrizable { .. } => "NotSymmetrizable",
            Error::NotSquare => "NotSquare",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
