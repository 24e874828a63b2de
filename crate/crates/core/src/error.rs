use thiserror::Error;

/// Every failure a computation in this crate can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("the Legendre symbol needs an odd prime modulus")]
    EvenPrime,

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: i128, modulus: u64 },

    #[error("zero term in lcm")]
    ZeroTerm,

    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,

    #[error("wrong case: {0}")]
    WrongCase(&'static str),

    #[error("polynomial has content {content}; reduce by content first")]
    NotPrimitive { content: u64 },

    #[error("modulus {modulus} exceeds oracle cap {cap}")]
    OracleCap { modulus: u128, cap: u64 },

    #[error("residue {residue} out of range for modulus {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },

    #[error("modulus {base}^{exp} does not fit the fixed-width arithmetic")]
    ModulusOverflow { base: u64, exp: u32 },

    #[error("not eventually periodic at k = {k}: witness i0 = {witness}, D = a^2 * {witness}^2")]
    NotEventuallyPeriodic { k: u64, witness: u64 },

    #[error("g is eventually periodic at k = {k}; no unboundedness witness exists")]
    EventuallyPeriodic { k: u64 },

    #[error("undefined (no periodic extension) at n = {n}")]
    Undefined { n: u64 },

    #[error("{what} cap {cap} exceeded")]
    CapExceeded { what: &'static str, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
