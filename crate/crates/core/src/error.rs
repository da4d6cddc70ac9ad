use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the core can report.
///
/// Hypothesis failures of the transforms get their own variants so callers
/// can tell which assumption broke.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    NotSquare { rows: usize, cols: usize },
    Empty,
    NonFinite,
    SingularMatrix,
    Overflow,
    NoConvergence { iterations: usize },
    NegativeTime(f64),
    InvalidCount,
    InvalidArgument(&'static str),
    NotMetzler,
    NotNonnegative { what: &'static str },
    NotExcitable,
    NotStable,
    NonpositiveZ { index: usize, value: f64 },
    NonpositiveNu { index: usize, value: f64 },
    EigenvectorMismatch { deviation: f64 },
    ExitIdentity { residual: f64 },
    ZeroMass,
    PsiOutOfRange(f64),
    ZeroDensityAtOrigin,
    ProbabilityOutOfRange(f64),
    InvalidDistribution(String),
    InvalidRates(String),
    WrongKind { expected: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::Empty => f.write_str("empty matrix or vector"),
            Error::NonFinite => f.write_str("non-finite entry"),
            Error::SingularMatrix => f.write_str("matrix is singular"),
            Error::Overflow => f.write_str("overflow in matrix exponential"),
            Error::NoConvergence { iterations } => {
                write!(f, "power iteration did not converge after {iterations} iterations")
            }
            Error::NegativeTime(x) => write!(f, "negative time {x}"),
            Error::InvalidCount => f.write_str("sample count must be at least 1"),
            Error::InvalidArgument(why) => write!(f, "invalid argument: {why}"),
            Error::NotMetzler => f.write_str("hypothesis failed: A is not Metzler"),
            Error::NotNonnegative { what } => {
                write!(f, "hypothesis failed: {what} has a negative entry")
            }
            Error::NotExcitable => f.write_str("hypothesis failed: (A, B) is not excitable"),
            Error::NotStable => f.write_str("hypothesis failed: A is not asymptotically stable"),
            Error::NonpositiveZ { index, value } => {
                write!(f, "z = (I - A)^-1 B is not positive: z[{index}] = {value}")
            }
            Error::NonpositiveNu { index, value } => {
                write!(
                    f,
                    "null vector of the augmented realization is not positive: nu[{index}] = {value}"
                )
            }
            Error::EigenvectorMismatch { deviation } => {
                write!(
                    f,
                    "power-iteration cross-check disagrees with the null vector by {deviation}"
                )
            }
            Error::ExitIdentity { residual } => {
                write!(f, "exit vector identity violated (residual {residual})")
            }
            Error::ZeroMass => f.write_str("initial vector has zero total mass"),
            Error::PsiOutOfRange(psi) => write!(f, "psi = {psi} is outside (0, 1)"),
            Error::ZeroDensityAtOrigin => f.write_str("density at the origin is zero"),
            Error::ProbabilityOutOfRange(p) => write!(f, "probability {p} outside [0, 1]"),
            Error::InvalidDistribution(why) => write!(f, "invalid phase-type representation: {why}"),
            Error::InvalidRates(why) => write!(f, "invalid rates: {why}"),
            Error::WrongKind { expected } => write!(f, "expected a {expected} realization"),
        }
    }
}

impl core::error::Error for Error {}
