use alloc::string::String;
use core::fmt;

/// Errors raised by the library core.
///
/// Verification outcomes (a failed congruence, a kernel certificate with a
/// witness) are results, not errors; this type only covers violated
/// preconditions and construction failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus is not an odd prime.
    NotOddPrime(u64),
    /// A Hilbert symbol or valuation was requested for zero.
    ZeroArgument,
    /// A matrix failed a structural check (symmetry, evenness, definiteness, shape).
    InvalidMatrix(String),
    /// The matrix is singular where a nonsingular one is required.
    Singular,
    /// An integer parameter is outside its admissible range.
    OutOfRange { what: &'static str, value: i64 },
    /// Two operands do not share degree, denominator or size.
    ShapeMismatch(String),
    /// A discriminant that is not negative and `≡ 0, 1 (mod 4)`.
    InvalidDiscriminant(i64),
    /// A binary form that is not positive definite.
    NotPositiveDefinite,
    /// The stored trace bound does not cover all indices a computation needs.
    BoundInsufficient { needed: u64, available: u64 },
    /// A coefficient has negative valuation where `p`-integrality is required.
    NotIntegral { index: String },
    /// A lattice construction produced an object failing its contract.
    ContractViolation(String),
    /// A search guard (rank, enumeration size) was exceeded.
    GuardExceeded(String),
    /// A prefactor with a half-integral `p`-exponent cannot be represented rationally.
    HalfIntegralPrefactor,
    /// Unit tags of cusp expansions differ, so the series cannot be combined.
    IncompatibleUnits,
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::ZeroArgument => f.write_str("argument must be nonzero"),
            Error::InvalidMatrix(msg) => write!(f, "invalid matrix: {msg}"),
            Error::Singular => f.write_str("matrix is singular"),
            Error::OutOfRange { what, value } => write!(f, "{what} = {value} is out of range"),
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::InvalidDiscriminant(d) => write!(f, "invalid discriminant {d}"),
            Error::NotPositiveDefinite => f.write_str("form is not positive definite"),
            Error::BoundInsufficient { needed, available } => {
                write!(f, "trace bound {available} is insufficient, need {needed}")
            }
            Error::NotIntegral { index } => write!(f, "coefficient at {index} is not p-integral"),
            Error::ContractViolation(msg) => write!(f, "contract violation: {msg}"),
            Error::GuardExceeded(msg) => write!(f, "guard exceeded: {msg}"),
            Error::HalfIntegralPrefactor => {
                f.write_str("prefactor has a half-integral p-exponent")
            }
            Error::IncompatibleUnits => f.write_str("cusp expansions carry different unit tags"),
        }
    }
}

impl core::error::Error for Error {}
