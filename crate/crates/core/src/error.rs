use thiserror::Error;

/// Errors raised by the algebraic routines.
///
/// Parse failures from the text formats live in [`crate::io::ParseError`]
/// and are wrapped here.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group or scalar domain mismatch: {0}")]
    Mismatch(String),
    #[error("element is not invertible in the rational group ring")]
    NotInvertible,
    #[error("element has negative {l}-adic valuation")]
    NotIntegral { l: u64 },
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("module or homology is not finite")]
    NotFinite,
    #[error("module order is not a power of {l}")]
    NotLPower { l: u64 },
    #[error("working precision {have} is below the required {need}")]
    PrecisionTooLow { have: u32, need: u32 },
    #[error("membership answer changed between precision {low} and {high}")]
    PrecisionMismatch { low: u32, high: u32 },
    #[error("enumeration of {count} candidates exceeds the oracle limit")]
    TooLarge { count: u128 },
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("homology is not concentrated in degrees 0 and 1 (degree {degree} is nonzero)")]
    WrongConcentration { degree: usize },
    #[error("could not certify a free truncation: {0}")]
    NotFree(String),
    #[error("splitting system is inconsistent")]
    SplitFailure,
    #[error("residue {a} is not a unit modulo {f}")]
    BadResidue { a: i64, f: u64 },
    #[error("incompatible fields: {0}")]
    IncompatibleFields(String),
    #[error("prime {p} ramifies (divides the conductor {f})")]
    Ramified { p: u64, f: u64 },
    #[error("b = {b} must be coprime to {modulus}")]
    BadB { b: u64, modulus: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] crate::io::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
