//! Elementary functions over [`ArbReal`].
//!
//! Each function works a few digits above the requested precision and rounds
//! once at the end.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::arb::{precision_bits, ArbReal};
use super::DomainError;

const INNER_GUARD: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Sqrt,
    Exp,
    Ln,
    Atanh,
    NthRoot(u32),
}

/// Dispatches to the named elementary function.
pub fn elementary(f: Elementary, x: &ArbReal, digits: u32) -> Result<ArbReal, DomainError> {
    match f {
        Elementary::Sqrt => sqrt(x, digits),
        Elementary::Exp => exp(x, digits),
        Elementary::Ln => ln(x, digits),
        Elementary::Atanh => atanh(x, digits),
        Elementary::NthRoot(n) => nth_root(x, n, digits),
    }
}

fn decimal_len(v: i64) -> u32 {
    (v.unsigned_abs() + 1).ilog10() + 1
}

pub fn sqrt(x: &ArbReal, digits: u32) -> Result<ArbReal, DomainError> {
    if x.is_negative() {
        return Err(DomainError::new("sqrt", x));
    }
    nth_root(x, 2, digits)
}

/// Real `n`-th root; odd roots of negative numbers are allowed.
pub fn nth_root(x: &ArbReal, n: u32, digits: u32) -> Result<ArbReal, DomainError> {
    if n == 0 || (x.is_negative() && n.is_multiple_of(2)) {
        return Err(DomainError::new("nth_root", x));
    }
    if x.is_zero() {
        return Ok(ArbReal::zero(digits));
    }
    if n == 1 {
        return Ok(x.with_digits(digits));
    }
    let n_i = n as i64;
    let bits = precision_bits(digits) as i64 + 2;
    let m = x.mantissa().abs();
    let mut shift = n_i * bits - m.bits() as i64;
    shift += (x.exponent() - shift).rem_euclid(n_i);
    let scaled = if shift >= 0 {
        m << (shift as usize)
    } else {
        m >> ((-shift) as usize)
    };
    let root = scaled.nth_root(n);
    let e = (x.exponent() - shift) / n_i;
    let root = if x.is_negative() { -root } else { root };
    Ok(ArbReal::from_parts(root, e, digits))
}

/// `2 * atanh(1/3)`, memoized at the highest precision requested so far.
pub fn ln2(digits: u32) -> ArbReal {
    static CACHE: OnceLock<Mutex<Option<ArbReal>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    if let Some(v) = cache.lock().unwrap().as_ref() {
        if v.digits() >= digits {
            return v.with_digits(digits);
        }
    }
    let work = digits + INNER_GUARD;
    let third = &ArbReal::one(work) / &ArbReal::from_int(3, work);
    let v = atanh_series(&third, work).mul_pow2(1).with_digits(digits);
    let mut slot = cache.lock().unwrap();
    if slot.as_ref().is_none_or(|c| c.digits() < digits) {
        *slot = Some(v.clone());
    }
    v
}

/// `sum u^(2k+1)/(2k+1)`; intended for `|u| <= 3/4`.
pub(crate) fn atanh_series(u: &ArbReal, digits: u32) -> ArbReal {
    if u.is_zero() {
        return ArbReal::zero(digits);
    }
    let u = u.with_digits(digits);
    let u2 = &u * &u;
    let bits = precision_bits(digits) as i64;
    let mut power = u.clone();
    let mut sum = u.clone();
    let mut k: i64 = 1;
    loop {
        power = &power * &u2;
        let term = &power / &ArbReal::from_int(2 * k + 1, digits);
        if term.is_zero() || term.top_bit() < sum.top_bit() - bits - 4 {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    sum
}

pub fn ln(x: &ArbReal, digits: u32) -> Result<ArbReal, DomainError> {
    if !x.is_positive() {
        return Err(DomainError::new("ln", x));
    }
    let one = ArbReal::one(digits);
    if *x == one {
        return Ok(ArbReal::zero(digits));
    }
    // x = t * 2^e with t in [1/sqrt2, sqrt2)
    let mut e = x.top_bit();
    let mut t = x.mul_pow2(-e);
    if t.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
        t = t.mul_pow2(1);
        e -= 1;
    }
    let work = digits + INNER_GUARD + decimal_len(e);
    let t = t.with_digits(work);
    let one = ArbReal::one(work);
    let u = &(&t - &one) / &(&t + &one);
    let mut r = atanh_series(&u, work).mul_pow2(1);
    if e != 0 {
        r = &r + &(&ln2(work) * &ArbReal::from_int(e, work));
    }
    Ok(r.with_digits(digits))
}

pub fn atanh(x: &ArbReal, digits: u32) -> Result<ArbReal, DomainError> {
    let one = ArbReal::one(digits);
    if x.cmp_abs(&one).is_ge() {
        return Err(DomainError::new("atanh", x));
    }
    let work = digits + INNER_GUARD;
    if x.abs().to_f64() <= 0.75 {
        return Ok(atanh_series(x, work).with_digits(digits));
    }
    let x = x.with_digits(work);
    let one = ArbReal::one(work);
    let ratio = &(&one + &x) / &(&one - &x);
    Ok(ln(&ratio, work)?.mul_pow2(-1).with_digits(digits))
}

pub fn exp(x: &ArbReal, digits: u32) -> Result<ArbReal, DomainError> {
    if x.is_zero() {
        return Ok(ArbReal::one(digits));
    }
    let approx = x.to_f64();
    if approx.abs() > 1e15 {
        return Err(DomainError::new("exp", x));
    }
    let k_est = (approx / std::f64::consts::LN_2).round() as i64;
    let base_bits = precision_bits(digits);
    let squarings = ((base_bits as f64).sqrt() / 2.0) as i64 + 1;
    let work = digits + INNER_GUARD + decimal_len(k_est) + (squarings as u32) / 3 + 1;
    let x = x.with_digits(work);
    let l2 = ln2(work);
    let k = (&x / &l2).nearest_int();
    let r = &x - &(&l2 * &ArbReal::from_bigint(&k, work));
    let r = r.mul_pow2(-squarings);

    let bits = precision_bits(work) as i64;
    let mut sum = ArbReal::one(work);
    let mut term = ArbReal::one(work);
    let mut n: i64 = 1;
    loop {
        term = &(&term * &r) / &ArbReal::from_int(n, work);
        if term.is_zero() || term.top_bit() < -bits - 4 {
            break;
        }
        sum = &sum + &term;
        n += 1;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    let k = k.to_i64().ok_or_else(|| DomainError::new("exp", &x))?;
    Ok(sum.mul_pow2(k).with_digits(digits))
}

/// `x^y` for `x > 0`. Integer exponents use exact repeated squaring.
pub fn pow(x: &ArbReal, y: &ArbReal, digits: u32) -> Result<ArbReal, DomainError> {
    if !x.is_positive() {
        return Err(DomainError::new("pow", x));
    }
    if y.is_integer() {
        if let Some(n) = y.nearest_int().to_i64().filter(|n| n.abs() <= 1 << 31) {
            let xr = x.with_digits(digits + INNER_GUARD);
            return Ok(xr.powi(n).expect("positive base").with_digits(digits));
        }
    }
    let log_mag = (y.to_f64() * x.to_f64().ln()).abs();
    if !log_mag.is_finite() {
        return Err(DomainError::new("pow", x));
    }
    let work = digits + INNER_GUARD + decimal_len(log_mag as i64);
    let lx = ln(&x.with_digits(work), work)?;
    let v = exp(&(&lx * &y.with_digits(work)), work)?;
    Ok(v.with_digits(digits))
}

/// Integer power helper used by evaluators: `x^(p/q)` as `nth_root(x^p, q)`.
pub fn pow_ratio(x: &ArbReal, p: &BigInt, q: u32, digits: u32) -> Result<ArbReal, DomainError> {
    let p = p
        .to_i64()
        .filter(|p| p.abs() <= 1 << 31)
        .ok_or_else(|| DomainError::new("pow", x))?;
    let work = digits + INNER_GUARD;
    let xp = x
        .with_digits(work)
        .powi(p)
        .ok_or_else(|| DomainError::new("pow", x))?;
    nth_root(&xp, q, digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str, p: u32) -> ArbReal {
        ArbReal::parse_decimal(s, p).unwrap()
    }

    fn rel_err(a: &ArbReal, b: &ArbReal) -> f64 {
        (&(a - b) / b).abs().to_f64()
    }

    #[test]
    fn identity_cases() {
        assert!(ln(&ArbReal::one(30), 30).unwrap().is_zero());
        assert_eq!(exp(&ArbReal::zero(30), 30).unwrap(), ArbReal::one(30));
    }

    #[test]
    fn sqrt2_squares_back() {
        let s = sqrt(&ArbReal::from_int(2, 30), 30).unwrap();
        let err = (&(&s * &s) - &ArbReal::from_int(2, 30)).abs();
        assert!(err < dec("1e-28", 40));
    }

    #[test]
    fn domain_errors_name_the_function() {
        let neg = ArbReal::from_int(-1, 20);
        assert_eq!(ln(&neg, 20).unwrap_err().function, "ln");
        assert_eq!(ln(&ArbReal::zero(20), 20).unwrap_err().function, "ln");
        assert_eq!(sqrt(&neg, 20).unwrap_err().function, "sqrt");
        assert_eq!(atanh(&ArbReal::one(20), 20).unwrap_err().function, "atanh");
        assert_eq!(nth_root(&neg, 4, 20).unwrap_err().function, "nth_root");
        assert_eq!(pow(&ArbReal::zero(20), &ArbReal::one(20), 20).unwrap_err().function, "pow");
        assert!(nth_root(&neg, 3, 20).is_ok());
    }

    #[test]
    fn ln2_matches_reference_digits() {
        let v = ln2(50);
        let r = dec("0.69314718055994530941723212145817656807550013436025525412", 60);
        assert!(rel_err(&v, &r) < 1e-49);
        let e = exp(&v, 50).unwrap();
        assert!(rel_err(&e, &ArbReal::from_int(2, 50)) < 1e-49);
    }

    #[test]
    fn exp_of_negative_and_large_arguments() {
        let p = 40;
        let x = ArbReal::from_int(-50, p);
        let y = exp(&x, p).unwrap();
        let back = ln(&y, p).unwrap();
        assert!(rel_err(&back, &x) < 1e-38);
        let e = exp(&ArbReal::one(p), p).unwrap();
        let r = dec("2.718281828459045235360287471352662497757247093699959574966", 60);
        assert!(rel_err(&e, &r) < 1e-39);
    }

    #[test]
    fn atanh_both_branches() {
        let p = 40;
        let half = dec("0.5", p);
        // atanh(1/2) = ln(3)/2
        let want = ln(&ArbReal::from_int(3, p), p).unwrap().mul_pow2(-1);
        assert!(rel_err(&atanh(&half, p).unwrap(), &want) < 1e-38);
        let x = dec("0.9", p);
        // atanh(0.9) = ln(19)/2
        let want = ln(&ArbReal::from_int(19, p), p).unwrap().mul_pow2(-1);
        assert!(rel_err(&atanh(&x, p).unwrap(), &want) < 1e-38);
        assert!(rel_err(&atanh(&-x.clone(), p).unwrap(), &-want) < 1e-38);
    }

    #[test]
    fn pow_cases() {
        let p = 30;
        let four = ArbReal::from_int(4, p);
        let half = dec("0.5", p);
        let v = pow(&four, &half, p).unwrap();
        assert_eq!(v.to_decimal_string(30), "2.00000000000000000000000000000");
        let x = dec("3.75", p);
        assert_eq!(pow(&x, &ArbReal::one(p), p).unwrap(), x);
        let r = pow_ratio(&ArbReal::from_int(8, p), &BigInt::from(2), 3, p).unwrap();
        assert!(rel_err(&r, &ArbReal::from_int(4, p)) < 1e-29);
    }

    #[test]
    fn nth_root_of_tiny_and_huge_values() {
        let p = 30;
        let tiny = dec("1e-90", p);
        let r = nth_root(&tiny, 3, p).unwrap();
        assert!(rel_err(&r, &dec("1e-30", p)) < 1e-29);
        let huge = dec("1e120", p);
        let r = nth_root(&huge, 4, p).unwrap();
        assert!(rel_err(&r, &dec("1e30", p)) < 1e-29);
    }
}
