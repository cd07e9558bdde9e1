//! Series evaluators behind [`super::eval_constant`].
//!
//! Rational-term series are summed in fixed point: an integer scaled by
//! `2^frac_bits`, with a few dozen bits beyond the target so that per-term
//! truncation never reaches the returned digits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::bernoulli::BernoulliTable;
use crate::precision::{self, precision_bits, ArbReal, BigRational, DomainError};

const EXTRA_BITS: u64 = 32;

fn frac_bits(digits: u32) -> u64 {
    precision_bits(digits) + EXTRA_BITS
}

/// `atan(1/k)` in fixed point.
fn atan_inv(k: u64, bits: u64) -> BigInt {
    let k2 = BigInt::from(k * k);
    let mut power = (BigInt::one() << bits as usize) / BigInt::from(k);
    let mut sum = power.clone();
    let mut n: u64 = 1;
    loop {
        power /= &k2;
        let term = &power / BigInt::from(2 * n + 1);
        if term.is_zero() {
            break;
        }
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        n += 1;
    }
    sum
}

/// Machin's formula: `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(digits: u32) -> ArbReal {
    let bits = frac_bits(digits);
    let v = atan_inv(5, bits) * 16 - atan_inv(239, bits) * 4;
    ArbReal::from_fixed(v, bits, digits)
}

/// `zeta(3) = 5/2 sum_{k>=1} (-1)^(k+1) / (k^3 C(2k,k))`.
pub fn zeta3_central_binomial(digits: u32) -> ArbReal {
    let bits = frac_bits(digits);
    let one = BigInt::one() << bits as usize;
    let mut binom = BigInt::one();
    let mut sum = BigInt::zero();
    let mut k: u64 = 1;
    loop {
        binom = binom * BigInt::from(2 * k) * BigInt::from(2 * k - 1) / BigInt::from(k * k);
        let term = &one / (&binom * BigInt::from(k * k * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        k += 1;
    }
    ArbReal::from_fixed(sum * 5, bits + 1, digits)
}

/// `sum_{k>=0} 1/(C(2k,k) (2k+1)^2)`, the rational part of Ramanujan's Catalan formula.
fn catalan_binomial_sum(bits: u64) -> BigInt {
    let one = BigInt::one() << bits as usize;
    let mut binom = BigInt::one();
    let mut sum = one.clone();
    let mut k: u64 = 1;
    loop {
        binom = binom * BigInt::from(2 * k) * BigInt::from(2 * k - 1) / BigInt::from(k * k);
        let odd = BigInt::from(2 * k + 1);
        let term = &one / (&binom * &odd * &odd);
        if term.is_zero() {
            break;
        }
        sum += term;
        k += 1;
    }
    sum
}

/// `G = (pi/8) ln(2 + sqrt 3) + (3/8) sum_{k>=0} 1/(C(2k,k) (2k+1)^2)`.
pub fn catalan(digits: u32) -> ArbReal {
    let work = digits + 4;
    let bits = frac_bits(work);
    let tail = ArbReal::from_fixed(catalan_binomial_sum(bits) * 3, bits + 3, work);
    let root3 = precision::sqrt(&ArbReal::from_int(3, work), work).expect("positive");
    let log = precision::ln(&(&root3 + &ArbReal::from_int(2, work)), work).expect("positive");
    let head = (&pi(work) * &log).mul_pow2(-3);
    (&head + &tail).with_digits(digits)
}

/// `sum_{k>=0} (-1)^k a(k)` by the Cohen–Rodriguez Villegas–Zagier
/// acceleration; the error is about `5.83^(-n)` for `n` terms.
pub fn alternating_sum(digits: u32, a: impl Fn(u64, u32) -> ArbReal) -> ArbReal {
    let work = digits + 4;
    let n = (digits as f64 * 1.31).ceil() as u64 + 4;
    let w = ArbReal::from_int(3, work)
        + precision::sqrt(&ArbReal::from_int(8, work), work).expect("positive");
    let d = w.powi(n as i64).expect("nonzero");
    let d = (&d + &(&ArbReal::one(work) / &d)).mul_pow2(-1);
    let mut b = BigInt::from(-1);
    let mut c = -d.clone();
    let mut s = ArbReal::zero(work);
    let n_i = BigInt::from(n);
    for k in 0..n {
        c = &ArbReal::from_bigint(&b, work) - &c;
        s = &s + &(&c * &a(k, work));
        let k_i = BigInt::from(k);
        // b_{k+1} = b_k (k+n)(k-n) / ((k + 1/2)(k + 1)), always an integer
        let num: BigInt = &b * (&k_i + &n_i) * (&k_i - &n_i) * BigInt::from(2);
        let den = BigInt::from((2 * k + 1) * (k + 1));
        debug_assert!(num.is_multiple_of(&den));
        b = num / den;
    }
    (&s / &d).with_digits(digits)
}

/// Catalan's constant from its defining alternating series, accelerated.
pub fn catalan_alternating(digits: u32) -> ArbReal {
    alternating_sum(digits, |k, p| {
        let odd = ArbReal::from_int(2 * k as i64 + 1, p);
        &ArbReal::one(p) / &(&odd * &odd)
    })
}

/// `zeta(s)` for integer `s >= 2` through the alternating eta function:
/// `zeta(s) = eta(s) / (1 - 2^(1-s))`.
pub fn zeta_via_eta(s: u32, digits: u32) -> ArbReal {
    let work = digits + 2;
    let eta = alternating_sum(work, |k, p| {
        let base = ArbReal::from_int(k as i64 + 1, p);
        &ArbReal::one(p) / &base.powi(s as i64).expect("nonzero")
    });
    let factor = &ArbReal::one(work) - &ArbReal::one(work).mul_pow2(1 - s as i64);
    (&eta / &factor).with_digits(digits)
}

/// `zeta(2n) = (-1)^(n-1) 2^(2n-1) B_2n pi^(2n) / (2n)!` with an explicit table.
pub(crate) fn zeta_even_with(table: &BernoulliTable, n: u32, digits: u32, capped: bool) -> Result<ArbReal, DomainError> {
    if n == 0 {
        return Err(DomainError {
            function: "zeta_even",
            argument: "0".into(),
        });
    }
    let b = if capped {
        table.get(2 * n)?
    } else {
        table.get_any(2 * n)
    };
    let factorial = (1..=2 * n as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    let mut coeff = b * BigRational::from_integer(BigInt::one() << (2 * n as usize - 1))
        / BigRational::from_integer(factorial);
    if n.is_multiple_of(2) {
        coeff = -coeff;
    }
    let work = digits + 4;
    let pow = pi(work).powi(2 * n as i64).expect("nonzero");
    Ok((&ArbReal::from_rational(&coeff, work) * &pow).with_digits(digits))
}

/// `Li3(x) = sum x^n / n^3` for a rational `|x| <= 1/2`.
pub fn li3_series(x: &BigRational, digits: u32) -> ArbReal {
    let bits = frac_bits(digits);
    let (p, q) = (x.numer().clone(), x.denom().clone());
    let mut power = BigInt::one() << bits as usize;
    let mut sum = BigInt::zero();
    let mut n: u64 = 1;
    loop {
        power = power * &p / &q;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(n * n * n);
        sum += term;
        n += 1;
    }
    ArbReal::from_fixed(sum, bits, digits)
}

/// `sum_{k>=1} (-1)^(k+1) / (k^3 2^k C(2k,k))`.
pub fn huvent_sum(digits: u32) -> ArbReal {
    let bits = frac_bits(digits);
    let one = BigInt::one() << bits as usize;
    let mut binom = BigInt::one();
    let mut sum = BigInt::zero();
    let mut k: u64 = 1;
    loop {
        binom = binom * BigInt::from(2 * k) * BigInt::from(2 * k - 1) / BigInt::from(k * k);
        let den = (&binom * BigInt::from(k * k * k)) << k as usize;
        let term = &one / den;
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        k += 1;
    }
    ArbReal::from_fixed(sum, bits, digits)
}

/// `pi^2 sum_{k>=1} zeta(2k) / ((k+1) 16^k)`.
pub fn cho_sum(digits: u32) -> ArbReal {
    let work = digits + 4;
    let bits = precision_bits(work) as i64;
    let table = BernoulliTable::global();
    let mut sum = ArbReal::zero(work);
    let mut k: u32 = 1;
    loop {
        let zeta = if 2 * k <= table.cap() {
            zeta_even_with(table, k, work, true).expect("index within cap")
        } else {
            zeta_direct(2 * k, work)
        };
        let den = ArbReal::from_int(k as i64 + 1, work).mul_pow2(4 * k as i64);
        let term = &zeta / &den;
        if !sum.is_zero() && term.top_bit() < sum.top_bit() - bits - 4 {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    let p = pi(work);
    (&(&p * &p) * &sum).with_digits(digits)
}

/// `sum_{n>=1} n^(-s)` by brute force; only sensible for large `s`.
pub(crate) fn zeta_direct(s: u32, digits: u32) -> ArbReal {
    let bits = precision_bits(digits) as i64;
    let mut sum = ArbReal::one(digits);
    let mut n: i64 = 2;
    loop {
        let term = &ArbReal::one(digits) / &ArbReal::from_int(n, digits).powi(s as i64).expect("nonzero");
        if term.top_bit() < -bits - 4 {
            break;
        }
        sum = &sum + &term;
        n += 1;
    }
    sum
}

/// Euler's constant by Euler–Maclaurin on the harmonic numbers:
/// `gamma = H_N - ln N - 1/(2N) + sum_k B_2k / (2k N^2k)`.
pub fn euler_gamma(digits: u32) -> ArbReal {
    let work = digits + 6;
    let bits = frac_bits(work);
    let n = work as u64 + 10;
    let one = BigInt::one() << bits as usize;
    let harmonic = (1..=n).fold(BigInt::zero(), |acc, j| acc + &one / BigInt::from(j));
    let mut gamma = ArbReal::from_fixed(harmonic, bits, work);
    let n_arb = ArbReal::from_int(n as i64, work);
    gamma = &gamma - &precision::ln(&n_arb, work).expect("positive");
    gamma = &gamma - &(&ArbReal::one(work) / &n_arb.mul_pow2(1));

    let table = BernoulliTable::global();
    let target = precision_bits(work) as i64 + 8;
    let n2 = &n_arb * &n_arb;
    let mut n_pow = n2.clone();
    let mut prev_top = i64::MAX;
    for k in 1u32.. {
        let b = table.get_any(2 * k);
        let coeff = b / BigRational::from_integer(BigInt::from(2 * k));
        let term = &ArbReal::from_rational(&coeff, work) / &n_pow;
        let top = term.top_bit();
        if top < -target {
            break;
        }
        // asymptotic series: stop before terms start growing
        assert!(top <= prev_top, "Euler–Maclaurin terms diverged before reaching precision");
        prev_top = top;
        gamma = &gamma + &term;
        n_pow = &n_pow * &n2;
    }
    gamma.with_digits(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: &ArbReal, b: &ArbReal) -> f64 {
        (&(a - b) / b).abs().to_f64()
    }

    fn dec(s: &str) -> ArbReal {
        ArbReal::parse_decimal(s, 70).unwrap()
    }

    #[test]
    fn pi_reference() {
        let r = dec("3.14159265358979323846264338327950288419716939937510582097494459");
        assert!(rel(&pi(60), &r) < 1e-59);
    }

    #[test]
    fn zeta3_two_routes() {
        let a = zeta3_central_binomial(60);
        let b = zeta_via_eta(3, 60);
        assert!(rel(&a, &b) < 1e-58);
        let r = dec("1.20205690315959428539973816151144999076498629234049888179227");
        assert!(rel(&a, &r) < 1e-59);
    }

    #[test]
    fn catalan_two_routes() {
        let a = catalan(60);
        let b = catalan_alternating(60);
        assert!(rel(&a, &b) < 1e-58, "{a} vs {b}");
        let r = dec("0.915965594177219015054603514932384110774149374281672134266498");
        assert!(rel(&a, &r) < 1e-58);
    }

    #[test]
    fn gamma_reference() {
        let r = dec("0.577215664901532860606512090082402431042159335939923598805767");
        assert!(rel(&euler_gamma(60), &r) < 1e-58);
    }

    #[test]
    fn zeta5_reference() {
        let r = dec("1.03692775514336992633136548645703416805708091950191281197419");
        assert!(rel(&zeta_via_eta(5, 60), &r) < 1e-58);
    }

    #[test]
    fn li3_negative_argument() {
        // Li3(-1/2) summed naively as an oracle at low precision
        let x = BigRational::new(BigInt::from(-1), BigInt::from(2));
        let fast = li3_series(&x, 30);
        let mut oracle = 0.0f64;
        for n in 1..200 {
            oracle += (-0.5f64).powi(n) / (n as f64).powi(3);
        }
        assert!((fast.to_f64() - oracle).abs() < 1e-15);
    }

    #[test]
    fn huvent_first_partial_sum_is_quarter() {
        // first term 1/(1 * 2 * C(2,1)) = 1/4, then alternating decreasing terms
        let terms: Vec<f64> = (1..8)
            .map(|k: i32| {
                let c = (1..=k).fold(1.0, |acc, i| acc * (k + i) as f64 / i as f64);
                (-1f64).powi(k + 1) / ((k as f64).powi(3) * 2f64.powi(k) * c)
            })
            .collect();
        assert_eq!(terms[0], 0.25);
        let limit = huvent_sum(30).to_f64();
        let mut partial = 0.0;
        for (i, t) in terms.iter().enumerate() {
            partial += t;
            if i % 2 == 0 {
                assert!(partial > limit);
            } else {
                assert!(partial < limit);
            }
        }
    }

    #[test]
    fn cho_first_inner_term() {
        // zeta(2)/(2*16) = pi^2/192
        let z2 = zeta_even_with(BernoulliTable::global(), 1, 30, true).unwrap();
        let term = &z2 / &ArbReal::from_int(32, 30);
        let p = pi(30);
        assert!(rel(&term, &(&(&p * &p) / &ArbReal::from_int(192, 30))) < 1e-28);
    }
}
