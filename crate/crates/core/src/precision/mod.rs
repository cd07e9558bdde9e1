//! Arbitrary-precision reals, exact integers and rationals, elementary
//! functions, and the digit-accuracy metric.

mod accuracy;
mod arb;
mod decimal;
mod elementary;

use thiserror::Error;

pub use accuracy::{digit_accuracy, DigitAccuracy};
pub use arb::{gcd_all, precision_bits, ArbReal, MIN_DIGITS};
pub use decimal::ParseArbError;
pub use elementary::{
    atanh, elementary, exp, ln, ln2, nth_root, pow, pow_ratio, sqrt, Elementary,
};


/// Exact integers of unbounded size.
pub type BigInteger = num_bigint::BigInt;
/// Exact rationals, always kept in lowest terms with a positive denominator.
pub type BigRational = num_rational::BigRational;

/// Extra decimal digits carried by every evaluation pipeline.
pub const GUARD_DIGITS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{function}: argument {argument} is outside the domain")]
pub struct DomainError {
    pub function: &'static str,
    pub argument: String,
}

impl DomainError {
    pub fn new(function: &'static str, argument: &ArbReal) -> Self {
        DomainError {
            function,
            argument: argument.to_decimal_string(12),
        }
    }
}

/// Nearest integer, halves rounded away from zero.
pub fn nearest_int(x: &ArbReal) -> BigInteger {
    x.nearest_int()
}

/// Serializes a big integer as a decimal string.
pub fn serialize_bigint<S: serde::Serializer>(v: &BigInteger, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
