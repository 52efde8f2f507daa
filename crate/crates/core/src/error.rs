use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at t = {0}")]
    PoleAtPoint(Rational),
    #[error("domain error: {0}")]
    Domain(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid rational {0:?} (expected \"p\" or \"p/q\" with integers p, q)")]
    InvalidRational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("invalid polynomial {0:?}: {1}")]
    InvalidPolynomial(String, String),
    #[error("invalid rational function {0:?}: {1}")]
    InvalidRationalFunction(String, String),
}

/// Errors from matrix construction, factorization and the closed forms.
///
/// Matrix positions are 1-based `(row, column)`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular entry: denominator vanishes at {}", format_positions(.0))]
    SingularEntry(Vec<(usize, usize)>),
    #[error("singular closed-form factor at ({row}, {col}): {factor} = 0")]
    SingularFactor {
        row: usize,
        col: usize,
        factor: String,
    },
    #[error("zero pivot at elimination step {0}")]
    ZeroPivot(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix size {size} exceeds cofactor cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("no non-singular t sample found in {0} attempts")]
    RetriesExhausted(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl Error {
    /// Stable variant name for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SingularEntry(_) => "SingularEntry",
            Error::SingularFactor { .. } => "SingularEntry",
            Error::ZeroPivot(_) => "ZeroPivot",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::RetriesExhausted(_) => "RetriesExhausted",
            Error::Arith(ArithError::DivisionByZero) => "DivisionByZero",
            Error::Arith(ArithError::PoleAtPoint(_)) => "PoleAtPoint",
            Error::Arith(ArithError::Domain(_)) => "DomainError",
        }
    }
}

fn format_positions(positions: &[(usize, usize)]) -> String {
    positions
        .iter()
        .map(|(i, l)| format!("({i},{l})"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
