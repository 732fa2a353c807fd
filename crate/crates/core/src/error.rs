use core::fmt;

/// Errors raised by the linear algebra, the ellipsoid engine and input validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand lengths disagree.
    DimensionMismatch { expected: usize, found: usize },
    /// A vector, matrix or system of dimension zero was requested.
    EmptyDimension,
    /// A NaN or infinite value was supplied.
    NonFinite,
    /// A matrix built from rows was not exactly symmetric.
    NotSymmetric { row: usize, col: usize },
    /// A Cholesky pivot fell below the pivot tolerance.
    NotPositiveDefinite { pivot: usize },
    /// The cut direction has vanishing `aᵀKa`.
    DegenerateCut { quadratic_form: f64 },
    /// The updated shape matrix failed the positive-definiteness check.
    PositiveDefinitenessLost,
    /// A constraint or cut normal is (numerically) the zero vector.
    ZeroNormal { index: Option<usize> },
    /// The operation is not defined in this dimension.
    UnsupportedDimension { dim: usize, min: usize, max: usize },
    /// An instance exceeds the brute-force oracle's size limits.
    OracleLimits { dim: usize, constraints: usize },
    /// A scalar parameter is out of its valid range.
    InvalidParameter { name: &'static str, value: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyDimension => f.write_str("dimension must be at least 1"),
            Error::NonFinite => f.write_str("non-finite value"),
            Error::NotSymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({row}, {col})")
            }
            Error::NotPositiveDefinite { pivot } => {
                write!(f, "matrix is not positive definite (pivot {pivot})")
            }
            Error::DegenerateCut { quadratic_form } => {
                write!(f, "degenerate cut: aᵀKa = {quadratic_form:e}")
            }
            Error::PositiveDefinitenessLost => {
                f.write_str("shape matrix lost positive definiteness after update")
            }
            Error::ZeroNormal { index: Some(i) } => write!(f, "constraint {i} has a zero normal"),
            Error::ZeroNormal { index: None } => f.write_str("zero normal vector"),
            Error::UnsupportedDimension { dim, min, max } => {
                write!(f, "dimension {dim} outside supported range {min}..={max}")
            }
            Error::OracleLimits { dim, constraints } => write!(
                f,
                "instance too large for the brute-force oracle (n = {dim}, m = {constraints})"
            ),
            Error::InvalidParameter { name, value } => write!(f, "invalid {name}: {value}"),
        }
    }
}

impl core::error::Error for Error {}

/// Failure of a solve run.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    /// The system or the configuration is invalid.
    Invalid(Error),
    /// The engine reported a degenerate cut or lost positive definiteness.
    NumericalBreakdown { iteration: usize, cause: Error },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Invalid(e) => write!(f, "invalid input: {e}"),
            SolveError::NumericalBreakdown { iteration, cause } => {
                write!(f, "numerical breakdown at iteration {iteration}: {cause}")
            }
        }
    }
}

impl core::error::Error for SolveError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            SolveError::Invalid(e) | SolveError::NumericalBreakdown { cause: e, .. } => Some(e),
        }
    }
}

impl From<Error> for SolveError {
    fn from(e: Error) -> Self {
        SolveError::Invalid(e)
    }
}
