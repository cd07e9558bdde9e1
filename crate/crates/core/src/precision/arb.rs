use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BigRational;

/// Smallest precision a value may carry.
pub const MIN_DIGITS: u32 = 10;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Number of significand bits used for a precision of `digits` decimal digits.
pub fn precision_bits(digits: u32) -> u64 {
    (digits as f64 * LOG2_10).ceil() as u64 + 4
}

/// An arbitrary-precision binary floating-point number tagged with its
/// working precision in decimal digits.
///
/// The value is `mantissa * 2^exponent`. The mantissa never holds more than
/// [`precision_bits`] of the tag; every operation rounds to nearest (ties away
/// from zero). A binary operation carries the larger of its operands'
/// precisions, so exact literals built at a low precision do not degrade a
/// high-precision computation.
#[derive(Clone)]
pub struct ArbReal {
    mantissa: BigInt,
    exponent: i64,
    digits: u32,
}

fn shift_signed(m: &BigInt, by: i64) -> BigInt {
    match by.cmp(&0) {
        Ordering::Greater => m << (by as usize),
        Ordering::Less => m >> ((-by) as usize),
        Ordering::Equal => m.clone(),
    }
}

impl ArbReal {
    /// Builds `mantissa * 2^exponent`, rounded to `digits`.
    pub fn from_parts(mantissa: BigInt, exponent: i64, digits: u32) -> Self {
        let digits = digits.max(MIN_DIGITS);
        let bits = precision_bits(digits);
        let (mantissa, exponent) = round_mantissa(mantissa, exponent, bits);
        ArbReal {
            mantissa,
            exponent,
            digits,
        }
    }

    pub fn zero(digits: u32) -> Self {
        ArbReal {
            mantissa: BigInt::zero(),
            exponent: 0,
            digits: digits.max(MIN_DIGITS),
        }
    }

    pub fn one(digits: u32) -> Self {
        Self::from_int(1, digits)
    }

    pub fn from_int(v: i64, digits: u32) -> Self {
        Self::from_parts(BigInt::from(v), 0, digits)
    }

    pub fn from_bigint(v: &BigInt, digits: u32) -> Self {
        Self::from_parts(v.clone(), 0, digits)
    }

    pub fn from_rational(q: &BigRational, digits: u32) -> Self {
        Self::from_bigint(q.numer(), digits) / Self::from_bigint(q.denom(), digits)
    }

    /// Interprets `value` as a fixed-point number with `frac_bits` fractional bits.
    pub fn from_fixed(value: BigInt, frac_bits: u64, digits: u32) -> Self {
        Self::from_parts(value, -(frac_bits as i64), digits)
    }

    /// Nearest `f64`; only meant for estimates and diagnostics.
    pub fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        let len = self.mantissa.bits() as i64;
        let keep = 60.min(len);
        let top = shift_signed(&self.mantissa, keep - len).to_f64().unwrap_or(0.0);
        let e = self.exponent + len - keep;
        top * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        ArbReal {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
            digits: self.digits,
        }
    }

    /// Rounds (or widens) the value to a new precision tag.
    pub fn with_digits(&self, digits: u32) -> Self {
        Self::from_parts(self.mantissa.clone(), self.exponent, digits)
    }

    /// Position of the leading bit: `2^(top-1) <= |x| < 2^top`. Zero maps to `i64::MIN`.
    pub fn top_bit(&self) -> i64 {
        if self.mantissa.is_zero() {
            i64::MIN
        } else {
            self.exponent + self.mantissa.bits() as i64
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        ArbReal {
            mantissa: self.mantissa.clone(),
            exponent: if self.mantissa.is_zero() { 0 } else { self.exponent + k },
            digits: self.digits,
        }
    }

    /// Exact comparison of the represented values.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exponent.min(other.exponent);
        let a = shift_signed(&self.mantissa, self.exponent - e);
        let b = shift_signed(&other.mantissa, other.exponent - e);
        a.cmp(&b)
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().cmp_value(&other.abs())
    }

    /// Integer part rounded toward negative infinity.
    pub fn floor(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << (self.exponent as usize)
        } else {
            // arithmetic shift floors
            &self.mantissa >> ((-self.exponent) as usize)
        }
    }

    /// Nearest integer, halves rounded away from zero.
    pub fn nearest_int(&self) -> BigInt {
        if self.exponent >= 0 {
            return &self.mantissa << (self.exponent as usize);
        }
        let shift = (-self.exponent) as usize;
        let half = BigInt::one() << (shift - 1);
        let mag = (self.mantissa.abs() + half) >> shift;
        if self.mantissa.is_negative() {
            -mag
        } else {
            mag
        }
    }

    /// `x^n` for an integer exponent by repeated squaring. Fails only for `0^n`, `n < 0`.
    pub fn powi(&self, n: i64) -> Option<Self> {
        if n == 0 {
            return Some(Self::one(self.digits));
        }
        if self.is_zero() {
            return if n > 0 { Some(self.clone()) } else { None };
        }
        let bits = precision_bits(self.digits);
        let mut k = n.unsigned_abs();
        // carry extra bits so the ~log2(n) roundings stay below one final ulp
        let extra = 64 - k.leading_zeros() as u64 + 4;
        let work = bits + extra;
        let mut base = (self.mantissa.clone(), self.exponent);
        let mut acc = (BigInt::one(), 0i64);
        while k > 0 {
            if k & 1 == 1 {
                acc = round_mantissa(&acc.0 * &base.0, acc.1 + base.1, work);
            }
            k >>= 1;
            if k > 0 {
                base = round_mantissa(&base.0 * &base.0, base.1 * 2, work);
            }
        }
        let r = ArbReal::from_parts(acc.0, acc.1, self.digits);
        if n < 0 {
            Some(Self::one(self.digits) / r)
        } else {
            Some(r)
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let digits = self.digits.max(rhs.digits);
        if self.is_zero() {
            return Some(Self::zero(digits));
        }
        let bits = precision_bits(digits) as i64;
        let la = self.mantissa.bits() as i64;
        let lb = rhs.mantissa.bits() as i64;
        let shift = (bits + 2 + lb - la).max(0);
        let q = (&self.mantissa << (shift as usize)) / &rhs.mantissa;
        Some(Self::from_parts(
            q,
            self.exponent - rhs.exponent - shift,
            digits,
        ))
    }

    /// Exact value as a rational number.
    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << (self.exponent as usize))
        } else {
            BigRational::new(
                self.mantissa.clone(),
                BigInt::one() << ((-self.exponent) as usize),
            )
        }
    }

    /// `true` when the value is an exact integer.
    pub fn is_integer(&self) -> bool {
        if self.exponent >= 0 || self.mantissa.is_zero() {
            return true;
        }
        let shift = (-self.exponent) as u64;
        self.mantissa.trailing_zeros().is_some_and(|tz| tz >= shift)
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let digits = self.digits.max(rhs.digits);
        let rhs_m = if negate_rhs {
            -&rhs.mantissa
        } else {
            rhs.mantissa.clone()
        };
        if rhs_m.is_zero() {
            return self.with_digits(digits);
        }
        if self.mantissa.is_zero() {
            return Self::from_parts(rhs_m, rhs.exponent, digits);
        }
        let bits = precision_bits(digits) as i64;
        let top = self.top_bit().max(rhs.top_bit());
        let base = self.exponent.min(rhs.exponent).max(top - bits - 8);
        let a = shift_signed(&self.mantissa, self.exponent - base);
        let b = shift_signed(&rhs_m, rhs.exponent - base);
        Self::from_parts(a + b, base, digits)
    }
}

/// Rounds `m * 2^e` to at most `bits` significand bits, ties away from zero.
fn round_mantissa(m: BigInt, e: i64, bits: u64) -> (BigInt, i64) {
    if m.is_zero() {
        return (m, 0);
    }
    let len = m.bits();
    if len <= bits {
        return (m, e);
    }
    let shift = len - bits;
    let neg = m.is_negative();
    let half = BigInt::one() << ((shift - 1) as usize);
    let mut mag = (m.abs() + half) >> (shift as usize);
    let mut e = e + shift as i64;
    if mag.bits() > bits {
        mag >>= 1;
        e += 1;
    }
    (if neg { -mag } else { mag }, e)
}

impl PartialEq for ArbReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for ArbReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Debug for ArbReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArbReal({}, P={})", self, self.digits)
    }
}

impl fmt::Display for ArbReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(self.digits))
    }
}

impl Neg for ArbReal {
    type Output = ArbReal;
    fn neg(self) -> ArbReal {
        ArbReal {
            mantissa: -self.mantissa,
            exponent: self.exponent,
            digits: self.digits,
        }
    }
}

impl Neg for &ArbReal {
    type Output = ArbReal;
    fn neg(self) -> ArbReal {
        -(self.clone())
    }
}

impl Add for &ArbReal {
    type Output = ArbReal;
    fn add(self, rhs: &ArbReal) -> ArbReal {
        self.add_impl(rhs, false)
    }
}

impl Sub for &ArbReal {
    type Output = ArbReal;
    fn sub(self, rhs: &ArbReal) -> ArbReal {
        self.add_impl(rhs, true)
    }
}

impl Mul for &ArbReal {
    type Output = ArbReal;
    fn mul(self, rhs: &ArbReal) -> ArbReal {
        ArbReal::from_parts(
            &self.mantissa * &rhs.mantissa,
            self.exponent + rhs.exponent,
            self.digits.max(rhs.digits),
        )
    }
}

impl Div for &ArbReal {
    type Output = ArbReal;
    /// Panics on division by zero; use [`ArbReal::checked_div`] otherwise.
    fn div(self, rhs: &ArbReal) -> ArbReal {
        self.checked_div(rhs).expect("ArbReal division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ArbReal {
            type Output = ArbReal;
            fn $m(self, rhs: ArbReal) -> ArbReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ArbReal> for ArbReal {
            type Output = ArbReal;
            fn $m(self, rhs: &ArbReal) -> ArbReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<ArbReal> for &ArbReal {
            type Output = ArbReal;
            fn $m(self, rhs: ArbReal) -> ArbReal {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Greatest common divisor of a slice of integers (0 for an all-zero slice).
pub fn gcd_all(values: &[BigInt]) -> BigInt {
    values
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}
