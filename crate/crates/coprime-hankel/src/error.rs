//! Crate-wide error type.

use num_bigint::BigUint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field too large: {p}^{k} does not fit in 64 bits")]
    FieldTooLarge { p: u64, k: u32 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("modulus is reducible over GF({p}): divisible by {factor}")]
    ReducibleModulus { p: u64, factor: String },

    #[error("no built-in irreducible modulus for GF({p}^{k}); supply one explicitly")]
    NoBuiltinModulus { p: u64, k: u32 },

    #[error("element code {code} out of range for a field of order {q}")]
    CodeOutOfRange { code: u64, q: u64 },

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("division by the zero polynomial")]
    ZeroPolyDivisor,

    #[error("gcd undefined for all-zero input")]
    ZeroGcd,

    #[error("degree {degree} exceeds matrix order {order}")]
    DegreeTooLarge { degree: usize, order: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invalid pair: {0}")]
    InvalidPair(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("enumeration budget exceeded: need {needed} objects, budget is {budget}")]
    BudgetExceeded { needed: BigUint, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
