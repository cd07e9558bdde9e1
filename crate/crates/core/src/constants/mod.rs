//! Named mathematical constants and special series at arbitrary precision.
//!
//! | constant | method |
//! |---|---|
//! | pi | Machin arctangent formula |
//! | ln 2 | `2 atanh(1/3)` |
//! | ln(1 + sqrt 2) | `atanh(1/sqrt 2)` |
//! | Catalan G | Ramanujan's `(pi/8) ln(2+sqrt 3) + (3/8) sum 1/(C(2k,k)(2k+1)^2)` |
//! | Euler gamma | Euler–Maclaurin on harmonic numbers |
//! | zeta(2n) | Bernoulli numbers |
//! | zeta(3) | central binomial series |
//! | zeta(2n+1), n >= 2 | accelerated alternating eta series |
//! | Li3(x) | direct power series, `|x| <= 1/2` |
//!
//! Every value is computed with [`GUARD_DIGITS`] extra digits, rounded to the
//! requested precision and memoized per constant.

mod bernoulli;
mod series;

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::precision::{self, ArbReal, BigRational, DomainError, GUARD_DIGITS, MIN_DIGITS};

pub use bernoulli::{bernoulli, BernoulliTable, DEFAULT_BERNOULLI_CAP};
pub use series::{alternating_sum, catalan_alternating, zeta_via_eta};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstantId {
    Pi,
    Ln2,
    /// `asinh(1) = ln(1 + sqrt 2)`
    Asinh1,
    Catalan,
    EulerGamma,
    ZetaInt(u32),
    Li3(BigRational),
    /// `sum_{k>=1} (-1)^(k+1) / (k^3 2^k C(2k,k))`
    SeriesHuvent,
    /// `pi^2 sum_{k>=1} zeta(2k) / ((k+1) 16^k)`
    SeriesCho,
}

impl fmt::Display for ConstantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantId::Pi => f.write_str("pi"),
            ConstantId::Ln2 => f.write_str("ln(2)"),
            ConstantId::Asinh1 => f.write_str("ln(1+sqrt(2))"),
            ConstantId::Catalan => f.write_str("catalan"),
            ConstantId::EulerGamma => f.write_str("gamma"),
            ConstantId::ZetaInt(s) => write!(f, "zeta({s})"),
            ConstantId::Li3(x) => write!(f, "li3({x})"),
            ConstantId::SeriesHuvent => f.write_str("series_huvent"),
            ConstantId::SeriesCho => f.write_str("series_cho"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantError {
    #[error("unsupported constant {0}")]
    UnsupportedConstant(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

impl ConstantId {
    fn check(&self) -> Result<(), ConstantError> {
        let ok = match self {
            ConstantId::ZetaInt(s) => *s >= 2,
            ConstantId::Li3(x) => {
                x.is_one() || x.abs() <= BigRational::new(BigInt::one(), BigInt::from(2))
            }
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(ConstantError::UnsupportedConstant(self.to_string()))
        }
    }
}

fn cache() -> &'static RwLock<HashMap<ConstantId, ArbReal>> {
    static CACHE: OnceLock<RwLock<HashMap<ConstantId, ArbReal>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Evaluates a named constant to `digits` significant digits.
///
/// Results are memoized; a request at or below a cached precision is served
/// by rounding the cached value. Concurrent callers may duplicate work on a
/// cache miss but always agree on the result.
pub fn eval_constant(id: &ConstantId, digits: u32) -> Result<ArbReal, ConstantError> {
    id.check()?;
    let digits = digits.max(MIN_DIGITS);
    if let Some(v) = cache().read().unwrap().get(id) {
        if v.digits() >= digits {
            return Ok(v.with_digits(digits));
        }
    }
    let value = compute(id, digits + GUARD_DIGITS)?.with_digits(digits);
    let mut map = cache().write().unwrap();
    let keep = map.get(id).is_none_or(|old| old.digits() < digits);
    if keep {
        map.insert(id.clone(), value.clone());
    }
    Ok(value)
}

fn compute(id: &ConstantId, work: u32) -> Result<ArbReal, ConstantError> {
    Ok(match id {
        ConstantId::Pi => series::pi(work),
        ConstantId::Ln2 => precision::ln2(work),
        ConstantId::Asinh1 => {
            let half = ArbReal::one(work).mul_pow2(-1);
            let x = precision::sqrt(&half, work)?;
            precision::atanh(&x, work)?
        }
        ConstantId::Catalan => series::catalan(work),
        ConstantId::EulerGamma => series::euler_gamma(work),
        ConstantId::ZetaInt(s) if s % 2 == 0 => zeta_even(s / 2, work)?,
        ConstantId::ZetaInt(3) => series::zeta3_central_binomial(work),
        ConstantId::ZetaInt(s) => series::zeta_via_eta(*s, work),
        ConstantId::Li3(x) if x.is_one() => series::zeta3_central_binomial(work),
        ConstantId::Li3(x) => series::li3_series(x, work),
        ConstantId::SeriesHuvent => series::huvent_sum(work),
        ConstantId::SeriesCho => series::cho_sum(work),
    })
}

/// `zeta(2n) = (-1)^(n-1) 2^(2n-1) B_2n pi^(2n) / (2n)!`.
///
/// Limited to `2n <= 200` by the Bernoulli table.
pub fn zeta_even(n: u32, digits: u32) -> Result<ArbReal, ConstantError> {
    Ok(series::zeta_even_with(BernoulliTable::global(), n, digits, true)?)
}

pub fn series_huvent(digits: u32) -> ArbReal {
    eval_constant(&ConstantId::SeriesHuvent, digits).expect("always supported")
}

pub fn series_cho(digits: u32) -> ArbReal {
    eval_constant(&ConstantId::SeriesCho, digits).expect("always supported")
}
