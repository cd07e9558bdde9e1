//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use relq::precision::{precision_bits, ArbReal, BigRational};
use relq::pslq::PslqState;
use relq::termlang::{ExprKind, Func, NamedConst, Sign, TermExpr};

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(big(n), big(d))
}

/// Uniform real in `[1/2, 1)` carrying `digits` digits.
pub fn random_unit<R: Rng>(rng: &mut R, digits: u32) -> ArbReal {
    let bits = precision_bits(digits);
    let mut m = BigInt::one();
    let mut filled = 1u64;
    while filled < bits {
        let take = (bits - filled).min(32);
        let chunk: u32 = rng.gen();
        m = (m << take as usize) + BigInt::from(chunk >> (32 - take));
        filled += take;
    }
    ArbReal::from_fixed(m, bits, digits)
}

/// Random primitive vector with entries in `[-bound, bound]`, last entry
/// nonzero.
pub fn random_primitive<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<BigInt> {
    loop {
        let mut a: Vec<BigInt> = (0..n).map(|_| big(rng.gen_range(-bound..=bound))).collect();
        if a[n - 1].is_zero() {
            continue;
        }
        let g = a.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        if g.is_one() {
            if let Some(first) = a.iter().find(|v| !v.is_zero()) {
                if first.is_negative() {
                    a.iter_mut().for_each(|v| *v = -v.clone());
                }
            }
            return a;
        }
    }
}

/// A vector `x` with `sum a_i x_i = 0` for the returned primitive `a`,
/// where the first `n - 1` entries are random reals.
pub fn planted<R: Rng>(rng: &mut R, n: usize, digits: u32, bound: i64) -> (Vec<ArbReal>, Vec<BigInt>) {
    let a = random_primitive(rng, n, bound);
    planted_with(rng, &a, digits)
}

pub fn planted_with<R: Rng>(rng: &mut R, a: &[BigInt], digits: u32) -> (Vec<ArbReal>, Vec<BigInt>) {
    let n = a.len();
    let work = digits + 20;
    loop {
        let mut x: Vec<ArbReal> = (0..n - 1).map(|_| random_unit(rng, work)).collect();
        let mut s = ArbReal::zero(work);
        for (ai, xi) in a.iter().zip(&x) {
            s = s + ArbReal::from_bigint(ai, work) * xi;
        }
        let last = -(s / ArbReal::from_bigint(&a[n - 1], work));
        if last.is_zero() {
            continue;
        }
        x.push(last);
        return (x.iter().map(|v| v.with_digits(digits)).collect(), a.to_vec());
    }
}

pub fn norm2(a: &[BigInt]) -> f64 {
    a.iter()
        .map(|v| {
            let f: f64 = v.to_string().parse().unwrap();
            f * f
        })
        .sum::<f64>()
        .sqrt()
}

pub fn same_up_to_sign(found: &[BigInt], want: &[BigInt]) -> bool {
    found == want || found.iter().zip(want).all(|(f, w)| *f == -w.clone())
}

/// `A * B == I` exactly.
pub fn ab_is_identity(state: &PslqState) -> bool {
    let (a, b) = (state.a(), state.b());
    let n = a.len();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let s: BigInt = (0..n).map(|k| &a[i][k] * &b[k][j]).sum();
            s == if i == j { BigInt::one() } else { BigInt::zero() }
        })
    })
}

/// `max_j |y_j - sum_i xhat_i B_ij|`, computed with extra digits.
pub fn y_drift(state: &PslqState) -> ArbReal {
    let work = state.digits() + 30;
    let (x, y, b) = (state.x_hat(), state.y(), state.b());
    let n = x.len();
    let mut worst = ArbReal::zero(work);
    for j in 0..n {
        let mut s = ArbReal::zero(work);
        for i in 0..n {
            s = s + x[i].with_digits(work) * ArbReal::from_bigint(&b[i][j], work);
        }
        let d = (y[j].with_digits(work) - s).abs();
        if d > worst {
            worst = d;
        }
    }
    worst
}

/// Entries above the diagonal of H are exactly zero.
pub fn h_lower_trapezoidal(state: &PslqState) -> bool {
    state
        .h()
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().skip(i + 1).all(|(_, v)| v.is_zero()))
}

pub fn pow10(k: i32, digits: u32) -> ArbReal {
    let ten = ArbReal::from_int(10, digits);
    ten.powi(k as i64).unwrap()
}

/// `zeta(2n)` by direct summation of `N` terms plus an Euler-Maclaurin tail
/// using tabulated Bernoulli numbers `B_2 .. B_16`.
pub fn zeta_even_oracle(n: u32, digits: u32) -> ArbReal {
    const BERN: [(i64, i64); 8] = [
        (1, 6),
        (-1, 30),
        (1, 42),
        (-1, 30),
        (5, 66),
        (-691, 2730),
        (7, 6),
        (-3617, 510),
    ];
    let s = 2 * n as i64;
    let work = digits + 15;
    let big_n: i64 = 2000;
    let one = ArbReal::one(work);
    let mut sum = ArbReal::zero(work);
    for k in 1..big_n {
        sum = sum + &one / ArbReal::from_int(k, work).powi(s).unwrap();
    }
    let nn = ArbReal::from_int(big_n, work);
    let n_s = nn.powi(s).unwrap();
    // N^(1-s)/(s-1) + N^(-s)/2
    sum = sum + &nn / (&n_s * ArbReal::from_int(s - 1, work));
    sum = sum + &one / (&n_s * ArbReal::from_int(2, work));
    // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
    let mut rising = BigRational::from_integer(big(s));
    let mut fact = BigRational::one();
    let mut npow = &n_s * &nn;
    for (k, &(bn, bd)) in BERN.iter().enumerate() {
        let k = k as i64 + 1;
        fact *= BigRational::from_integer(big((2 * k - 1) * (2 * k)));
        let coeff = q(bn, bd) * &rising / &fact;
        sum = sum + ArbReal::from_rational(&coeff, work) / &npow;
        rising *= BigRational::from_integer(big((s + 2 * k - 1) * (s + 2 * k)));
        npow = &npow * &nn * &nn;
    }
    sum.with_digits(digits)
}

const CONSTS: [NamedConst; 3] = [NamedConst::Pi, NamedConst::Gamma, NamedConst::Catalan];

fn positive_rational<R: Rng>(rng: &mut R) -> BigRational {
    let n = rng.gen_range(1..=40);
    let d = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(2..=12) };
    q(n, d)
}

fn leaf<R: Rng>(rng: &mut R) -> TermExpr {
    match rng.gen_range(0..6) {
        0 | 1 => TermExpr::rational(positive_rational(rng)),
        2 | 3 => TermExpr::constant(*CONSTS.choose(rng).unwrap()),
        4 => TermExpr::call(Func::Zeta, TermExpr::int(rng.gen_range(2..=7))),
        _ => TermExpr::call(Func::Ln, TermExpr::int(rng.gen_range(2..=11))),
    }
}

/// Arbitrary well-formed expression tree whose printed form parses back to
/// the same tree. Literals are nonnegative; sums and products have at least
/// two children unless the sum opens with a minus sign.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> TermExpr {
    if depth == 0 {
        return leaf(rng);
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 => leaf(rng),
        1 => {
            let f = *[Func::Ln, Func::Sqrt, Func::Exp, Func::Zeta, Func::Li3].choose(rng).unwrap();
            TermExpr::call(f, random_expr(rng, d))
        }
        2 => {
            let exponent = match rng.gen_range(0..3) {
                0 => TermExpr::int(rng.gen_range(0..=5)),
                1 => TermExpr::rational(positive_rational(rng)),
                _ => random_expr(rng, d),
            };
            TermExpr::pow(random_expr(rng, d), exponent)
        }
        3 | 4 => {
            let k = rng.gen_range(2..=4);
            TermExpr::product((0..k).map(|_| random_expr(rng, d)).collect())
        }
        _ => {
            let k = rng.gen_range(1..=4);
            let mut addends: Vec<(Sign, TermExpr)> = (0..k)
                .map(|_| {
                    let s = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                    (s, random_expr(rng, d))
                })
                .collect();
            if k == 1 {
                addends[0].0 = Sign::Minus;
            }
            TermExpr::sum(addends)
        }
    }
}

/// Transcendental atoms with their weights.
pub fn weighted_atoms() -> Vec<(TermExpr, i64)> {
    vec![
        (TermExpr::constant(NamedConst::Pi), 1),
        (TermExpr::constant(NamedConst::Gamma), 1),
        (TermExpr::constant(NamedConst::Catalan), 2),
        (TermExpr::call(Func::Ln, TermExpr::int(2)), 1),
        (TermExpr::call(Func::Ln, TermExpr::int(3)), 1),
        (TermExpr::call(Func::Zeta, TermExpr::int(3)), 3),
        (TermExpr::call(Func::Zeta, TermExpr::int(5)), 5),
        (TermExpr::call(Func::Li3, TermExpr::rational(q(1, 2))), 3),
    ]
}

/// A product of integer powers of transcendental atoms, optionally times a
/// positive rational, together with its expected weight.
pub fn random_monomial<R: Rng>(rng: &mut R) -> (TermExpr, i64) {
    let atoms = weighted_atoms();
    let k = rng.gen_range(1..=4);
    let mut factors = Vec::new();
    let mut w = 0;
    if rng.gen_bool(0.3) {
        factors.push(TermExpr::rational(positive_rational(rng)));
    }
    for _ in 0..k {
        let (atom, aw) = atoms.choose(rng).unwrap().clone();
        let e = rng.gen_range(-3..=4i64);
        w += e * aw;
        factors.push(match e {
            1 => atom,
            e if e >= 0 => TermExpr::pow(atom, TermExpr::int(e)),
            e => TermExpr::pow(atom, TermExpr::rational(q(e, 1))),
        });
    }
    let expr = if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        TermExpr::product(factors)
    };
    (expr, w)
}

pub fn is_pow_of_product(e: &TermExpr) -> bool {
    matches!(&e.kind, ExprKind::Pow(b, _) if matches!(b.kind, ExprKind::Product(_)))
}
