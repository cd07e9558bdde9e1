//! Decimal text <-> [`ArbReal`].
//!
//! Accepted input: optional sign, digits, optional fractional part, optional
//! exponent marker `e`/`E` with an optional sign. Output truncates toward zero
//! to the requested number of significant digits.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};
use thiserror::Error;

use super::arb::{precision_bits, ArbReal, MIN_DIGITS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid decimal number {text:?}: {reason}")]
pub struct ParseArbError {
    pub text: String,
    pub reason: &'static str,
}

struct DecimalParts {
    negative: bool,
    digits: BigInt,
    exp10: i64,
    significant: u32,
}

fn split_decimal(text: &str) -> Result<DecimalParts, ParseArbError> {
    let err = |reason| ParseArbError {
        text: text.to_string(),
        reason,
    };
    let s = text.trim();
    let (negative, s) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err("unexpected character"));
    }
    let exp10: i64 = match exp {
        Some(e) => e.parse().map_err(|_| err("bad exponent"))?,
        None => 0,
    };
    let all: String = format!("{int_part}{frac_part}");
    let digits: BigInt = all.parse().map_err(|_| err("no digits"))?;
    let significant = all.trim_start_matches('0').len() as u32;
    Ok(DecimalParts {
        negative,
        digits,
        exp10: exp10 - frac_part.len() as i64,
        significant,
    })
}

impl ArbReal {
    /// Parses a decimal literal at the given precision.
    pub fn parse_decimal(text: &str, digits: u32) -> Result<ArbReal, ParseArbError> {
        let parts = split_decimal(text)?;
        let digits = digits.max(MIN_DIGITS);
        let mut v = if parts.exp10 >= 0 {
            let n = parts.digits * BigInt::from(10).pow(parts.exp10 as u64);
            ArbReal::from_bigint(&n, digits)
        } else {
            let den = BigInt::from(10).pow((-parts.exp10) as u64);
            // keep enough bits that the single division is the only rounding
            let wide = digits + 2;
            let q = ArbReal::from_bigint(&parts.digits, wide)
                .checked_div(&ArbReal::from_bigint(&den, wide))
                .expect("nonzero power of ten");
            q.with_digits(digits)
        };
        if parts.negative {
            v = -v;
        }
        Ok(v)
    }

    /// Renders `k` significant digits, truncated toward zero.
    ///
    /// Plain notation is used when the decimal exponent lies in `[-5, k)`,
    /// scientific (`d.ddde±x`) otherwise.
    pub fn to_decimal_string(&self, k: u32) -> String {
        let k = k.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let (n, e10) = self.digits_for_display(k);
        let mut s = n.to_string();
        debug_assert_eq!(s.len(), k as usize);
        let sign = if self.is_negative() { "-" } else { "" };
        if e10 >= -5 && e10 < k as i64 {
            if e10 >= 0 {
                let point = e10 as usize + 1;
                if point < s.len() {
                    s.insert(point, '.');
                }
                format!("{sign}{s}")
            } else {
                let zeros = "0".repeat((-e10 - 1) as usize);
                format!("{sign}0.{zeros}{s}")
            }
        } else {
            if s.len() > 1 {
                s.insert(1, '.');
            }
            format!("{sign}{s}e{e10}")
        }
    }

    /// Like [`leading_digits`](Self::leading_digits) but first absorbs one unit in the last
    /// binary place, so decimal values that are not exactly representable
    /// (`1.5e-9`) do not print as `1.4999...`.
    fn digits_for_display(&self, k: u32) -> (BigInt, i64) {
        let bits = precision_bits(self.digits()) as i64;
        let ulp = ArbReal::from_parts(BigInt::from(1), self.top_bit() - bits, self.digits());
        let bumped = (&self.abs() + &ulp).with_digits(self.digits() + 1);
        bumped.leading_digits(k)
    }

    /// Returns `(N, e)` with `10^(k-1) <= N < 10^k` and `N = trunc(|x| * 10^(k-1-e))`.
    pub(crate) fn leading_digits(&self, k: u32) -> (BigInt, i64) {
        let lo = BigInt::from(10).pow(k - 1);
        let hi = &lo * 10;
        let mut e10 = self.decimal_exponent_estimate();
        loop {
            let n = self.scaled_trunc(k as i64 - 1 - e10);
            if n >= hi {
                e10 += 1;
            } else if n < lo {
                e10 -= 1;
            } else {
                return (n, e10);
            }
        }
    }

    /// Rough `floor(log10|x|)`, exact up to +-1.
    pub(crate) fn decimal_exponent_estimate(&self) -> i64 {
        let bits = self.top_bit() as f64;
        ((bits - 0.5) * std::f64::consts::LOG10_2).floor() as i64
    }

    /// `trunc(|x| * 10^s)` computed exactly.
    pub(crate) fn scaled_trunc(&self, s: i64) -> BigInt {
        let mut num = self.mantissa().abs();
        let mut den = BigInt::from(1);
        if s >= 0 {
            num *= BigInt::from(10).pow(s as u64);
        } else {
            den *= BigInt::from(10).pow((-s) as u64);
        }
        let e = self.exponent();
        if e >= 0 {
            num <<= e as usize;
        } else {
            den <<= (-e) as usize;
        }
        if num.is_zero() {
            return num;
        }
        num / den
    }
}

impl FromStr for ArbReal {
    type Err = ParseArbError;

    /// Precision is the number of significant digits written, at least [`MIN_DIGITS`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = split_decimal(s)?;
        ArbReal::parse_decimal(s, parts.significant.max(MIN_DIGITS))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prints_truncated_significant_digits() {
        let x = ArbReal::parse_decimal("1.20205690315959428539973816151144999", 40).unwrap();
        assert_eq!(x.to_decimal_string(30), "1.20205690315959428539973816151");
        assert_eq!(x.to_decimal_string(3), "1.20");
        let y = ArbReal::parse_decimal("-0.00123456789", 20).unwrap();
        assert_eq!(y.to_decimal_string(4), "-0.001234");
        let z = ArbReal::parse_decimal("394", 20).unwrap();
        assert_eq!(z.to_decimal_string(3), "394");
        assert_eq!(z.to_decimal_string(5), "394.00");
        let big = ArbReal::parse_decimal("6.02e23", 20).unwrap();
        assert_eq!(big.to_decimal_string(3), "6.02e23");
        let small = ArbReal::parse_decimal("1.5E-9", 20).unwrap();
        assert_eq!(small.to_decimal_string(2), "1.5e-9");
        assert_eq!(ArbReal::zero(20).to_decimal_string(5), "0");
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "-", ".", "1.2.3", "1e", "abc", "1,5", "1e+x"] {
            assert!(ArbReal::parse_decimal(bad, 20).is_err(), "{bad:?}");
        }
        assert!(ArbReal::parse_decimal(".5", 20).is_ok());
        assert!(ArbReal::parse_decimal("+5.", 20).is_ok());
    }

    #[test]
    fn from_str_uses_written_digits() {
        let x: ArbReal = "1.20205690315959428539958993430".parse().unwrap();
        assert_eq!(x.digits(), 30);
        let y: ArbReal = "2".parse().unwrap();
        assert_eq!(y.digits(), MIN_DIGITS);
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(m in -10_000_000_000i64..10_000_000_000, den in 1i64..1_000_000, k in 10u32..40) {
            prop_assume!(m != 0);
            let p = 50;
            let x = &ArbReal::from_int(m, p) / &ArbReal::from_int(den, p);
            let back = ArbReal::parse_decimal(&x.to_decimal_string(k), p).unwrap();
            let rel = (&(&back - &x) / &x).abs();
            let bound = ArbReal::parse_decimal(&format!("1e{}", 1 - k as i64), p).unwrap();
            prop_assert!(rel < bound);
        }
    }
}
