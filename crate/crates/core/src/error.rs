use thiserror::Error;

/// Errors raised anywhere in the construction and verification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("field of order {0} exceeds the supported maximum of {max}", max = crate::field::MAX_ORDER)]
    FieldTooLarge(u64),
    #[error("encoding {encoding} is not an element of a field of order {order}")]
    ForeignElement { encoding: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} does not divide the extension degree {1}")]
    NotADivisor(u32, u32),

    #[error("dual number is not a unit")]
    NonUnit,
    #[error("pair is not admissible: neither coordinate is a unit")]
    Inadmissible,
    #[error("point id {0} out of range")]
    BadPointId(u64),
    #[error("matrix determinant is not a unit")]
    SingularMatrix,
    #[error("points are not pairwise non-parallel")]
    NotTransversal,

    #[error("block size {k} must satisfy {t} <= k < {v}")]
    BlockSize { k: usize, t: usize, v: usize },
    #[error("point classes do not all have the same size")]
    UnequalClasses,
    #[error("parameter {what} is not integral: {num}/{den}")]
    NonIntegral { what: &'static str, num: u128, den: u128 },
    #[error("strength must be at least {min}, got {t}")]
    BadStrength { t: usize, min: usize },

    #[error("condition {condition} violated ({detail})")]
    Condition { condition: &'static str, detail: String },
    #[error("cross-ratio argument must differ from 0 and 1")]
    DegenerateCrossRatio,
    #[error("no element of the subfield realises the requested quadruple class")]
    NoEligibleElement,

    #[error("verification would need {needed} membership tests, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("malformed design: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
