use num_bigint::BigInt;
use thiserror::Error;

use crate::ring::CoefficientRing;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch {
        left: CoefficientRing,
        right: CoefficientRing,
    },
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("constant term is not a unit in {0}")]
    NonUnitConstant(CoefficientRing),
    #[error(
        "coefficient of q^{exponent} has denominator {denominator}, not invertible mod {modulus}"
    )]
    NonIntegralCoefficient {
        exponent: usize,
        denominator: BigInt,
        modulus: u64,
    },
    #[error("scalar {value} is not integral mod {modulus}")]
    NonIntegralScalar { value: String, modulus: u64 },
    #[error("coefficient of q^{0} is non-zero; cannot divide by that power of q")]
    NonZeroLeadingTerm(usize),
    #[error("operation needs a zero constant term")]
    NonZeroConstant,
    #[error("malformed series JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
