use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed};
use serde::Serialize;

use super::{ArbReal, BigRational, DomainError, GUARD_DIGITS};

/// Number of correct digits after the leading digit of the reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DigitAccuracy {
    /// `approx` is correct to this many digits.
    Digits(i64),
    /// The operands agree at their shared precision; the value is the
    /// largest claim that precision supports.
    Capped(u32),
}

impl DigitAccuracy {
    pub fn value(&self) -> i64 {
        match *self {
            DigitAccuracy::Digits(d) => d,
            DigitAccuracy::Capped(c) => c as i64,
        }
    }

    pub fn is_capped(&self) -> bool {
        matches!(self, DigitAccuracy::Capped(_))
    }
}

impl fmt::Display for DigitAccuracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitAccuracy::Digits(d) => write!(f, "{d}"),
            DigitAccuracy::Capped(c) => write!(f, ">={c}"),
        }
    }
}

/// Measures how many digits of `reference` the value `approx` reproduces.
///
/// With `E = floor(log10 |reference|)`, the result is the largest `d` such that
/// `|approx - reference| <= 10^(E - d) / 2`: the half-unit rule applied to the
/// digits after the leading one. For references in `[1, 10)` this is the
/// usual count of correct decimal places. Operands that coincide once rounded
/// to their shared precision give [`DigitAccuracy::Capped`] at
/// `shared - GUARD_DIGITS`.
pub fn digit_accuracy(approx: &ArbReal, reference: &ArbReal) -> Result<DigitAccuracy, DomainError> {
    if reference.is_zero() {
        return Err(DomainError::new("digit_accuracy", reference));
    }
    let shared = approx.digits().min(reference.digits());
    if approx.with_digits(shared) == reference.with_digits(shared) {
        return Ok(DigitAccuracy::Capped(shared.saturating_sub(GUARD_DIGITS)));
    }
    let (_, e10) = reference.leading_digits(1);
    let diff = (approx.to_rational() - reference.to_rational()).abs() * BigInt::from(2);

    // f(d) = 2|a - r| * 10^(d - E) is increasing in d; find the last d with f(d) <= 1.
    let fits = |d: i64| -> bool {
        let s = d - e10;
        let ten = BigInt::from(10);
        let scaled = if s >= 0 {
            &diff * BigRational::from_integer(ten.pow(s as u64))
        } else {
            &diff / BigRational::from_integer(ten.pow((-s) as u64))
        };
        scaled <= BigRational::one()
    };
    let est = {
        let a = ArbReal::from_rational(&diff, 20);
        e10 - a.decimal_exponent_estimate()
    };
    let mut d = est;
    while !fits(d) {
        d -= 1;
    }
    while fits(d + 1) {
        d += 1;
    }
    Ok(DigitAccuracy::Digits(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str, p: u32) -> ArbReal {
        ArbReal::parse_decimal(s, p).unwrap()
    }

    #[test]
    fn weight3_form_agrees_to_21_digits() {
        let approx = dec("1.20205690315959428539958993430", 40);
        let exact = dec("1.20205690315959428539973816151", 40);
        assert_eq!(digit_accuracy(&approx, &exact).unwrap(), DigitAccuracy::Digits(21));
        // same strings at their natural precision
        let a: ArbReal = "1.20205690315959428539958993430".parse().unwrap();
        let b: ArbReal = "1.20205690315959428539973816151".parse().unwrap();
        assert_eq!(digit_accuracy(&a, &b).unwrap(), DigitAccuracy::Digits(21));
    }

    #[test]
    fn identical_operands_are_capped() {
        let x = dec("3.14159", 30);
        assert_eq!(digit_accuracy(&x, &x).unwrap(), DigitAccuracy::Capped(20));
        assert!(digit_accuracy(&x, &x).unwrap().is_capped());
    }

    #[test]
    fn zero_reference_is_a_domain_error() {
        let x = dec("1", 20);
        assert!(digit_accuracy(&x, &ArbReal::zero(20)).is_err());
    }

    #[test]
    fn half_unit_boundary() {
        let r = dec("1", 30);
        assert_eq!(digit_accuracy(&dec("1.05", 30), &r).unwrap(), DigitAccuracy::Digits(1));
        assert_eq!(digit_accuracy(&dec("1.0500001", 30), &r).unwrap(), DigitAccuracy::Digits(0));
        assert_eq!(digit_accuracy(&dec("1.004", 30), &r).unwrap(), DigitAccuracy::Digits(2));
        // scale of the reference does not matter
        let r = dec("1000", 30);
        assert_eq!(digit_accuracy(&dec("1000.4", 30), &r).unwrap(), DigitAccuracy::Digits(3));
        // a negative count for wildly wrong approximations
        assert_eq!(digit_accuracy(&dec("500", 30), &dec("1", 30)).unwrap(), DigitAccuracy::Digits(-3));
    }

    #[test]
    fn exactly_zero_difference_at_unequal_precisions() {
        let a = dec("2", 20);
        let b = dec("2", 50);
        assert_eq!(digit_accuracy(&a, &b).unwrap(), DigitAccuracy::Capped(10));
    }
}
