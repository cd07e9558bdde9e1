//! PSLQ integer-relation detection.
//!
//! Given reals `x_1..x_n`, searches for a nonzero integer vector `a` with
//! `a . x = 0` up to the working precision. Each run also produces a lower
//! bound on the norm of any relation, which is the useful output when no
//! relation is found.

mod state;

use num_bigint::BigInt;
use thiserror::Error;

use crate::precision::{self, ArbReal, BigInteger};

pub use state::{pslq_run, pslq_run_with_state, PslqState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PslqError {
    #[error("PSLQ needs at least two entries, got {0}")]
    DimensionError(usize),
    #[error("entry {0} is zero")]
    ZeroEntry(usize),
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("numeric breakdown: a diagonal entry of H fell below working precision")]
    NumericBreakdown,
}

#[derive(Debug, Clone)]
pub struct PslqParams {
    pub gamma: ArbReal,
    /// Detection threshold on `min |y_i|`.
    pub epsilon: ArbReal,
    /// `None` means `10 n^3`.
    pub max_iterations: Option<u64>,
    pub digits: u32,
    /// Report no relation once every relation is known to exceed this norm,
    /// and reject found relations with a larger entry.
    pub max_coeff: Option<BigInteger>,
}

/// `2/sqrt(3)` at `digits`, rounded up.
pub fn min_gamma(digits: u32) -> ArbReal {
    let four_thirds = ArbReal::from_int(4, digits) / ArbReal::from_int(3, digits);
    let g = precision::sqrt(&four_thirds, digits).expect("positive");
    let ulp_exp = g.top_bit() - precision::precision_bits(digits) as i64;
    &g + &ArbReal::from_parts(BigInt::from(1), ulp_exp, digits)
}

impl PslqParams {
    /// `gamma = 2/sqrt(3)`, `epsilon = 10^-(P-5)`, `10 n^3` iterations.
    pub fn new(digits: u32) -> Self {
        let eps_exp = digits.saturating_sub(5).max(1);
        let epsilon = ArbReal::parse_decimal(&format!("1e-{eps_exp}"), digits).expect("valid literal");
        PslqParams {
            gamma: min_gamma(digits),
            epsilon,
            max_iterations: None,
            digits,
            max_coeff: None,
        }
    }

    pub fn with_gamma(mut self, gamma: ArbReal) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_epsilon(mut self, epsilon: ArbReal) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_iterations(mut self, m: u64) -> Self {
        self.max_iterations = Some(m);
        self
    }

    pub fn with_max_coeff(mut self, k: BigInteger) -> Self {
        self.max_coeff = Some(k);
        self
    }

    pub fn iteration_cap(&self, n: usize) -> u64 {
        self.max_iterations.unwrap_or(10 * (n as u64).pow(3))
    }

    pub fn validate(&self) -> Result<(), PslqError> {
        let floor = min_gamma(self.digits.max(precision::MIN_DIGITS));
        if self.gamma.with_digits(self.digits) < floor.with_digits(self.digits) {
            return Err(PslqError::InvalidParams(format!(
                "gamma must be at least 2/sqrt(3), got {}",
                self.gamma
            )));
        }
        let one = ArbReal::one(self.digits);
        if !self.epsilon.is_positive() || self.epsilon >= one {
            return Err(PslqError::InvalidParams(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.max_iterations == Some(0) {
            return Err(PslqError::InvalidParams("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

/// A primitive integer relation, first nonzero entry positive.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerRelation {
    pub coefficients: Vec<BigInteger>,
    /// `|sum a_i x_i|` recomputed from the inputs.
    pub residual: ArbReal,
    /// `min |y| / max |y|` at detection.
    pub confidence: ArbReal,
    pub iterations: u64,
}

impl IntegerRelation {
    pub fn max_abs(&self) -> BigInteger {
        self.coefficients
            .iter()
            .map(|c| c.magnitude().clone().into())
            .max()
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PslqOutcome {
    RelationFound { relation: IntegerRelation, bound: ArbReal },
    NoRelation { bound: ArbReal },
    PrecisionExhausted { bound: ArbReal },
    IterationLimit { bound: ArbReal },
}

impl PslqOutcome {
    /// Lower bound on the Euclidean norm of any integer relation.
    pub fn bound(&self) -> &ArbReal {
        match self {
            PslqOutcome::RelationFound { bound, .. }
            | PslqOutcome::NoRelation { bound }
            | PslqOutcome::PrecisionExhausted { bound }
            | PslqOutcome::IterationLimit { bound } => bound,
        }
    }

    pub fn relation(&self) -> Option<&IntegerRelation> {
        match self {
            PslqOutcome::RelationFound { relation, .. } => Some(relation),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PslqOutcome::RelationFound { .. } => "relation_found",
            PslqOutcome::NoRelation { .. } => "no_relation",
            PslqOutcome::PrecisionExhausted { .. } => "precision_exhausted",
            PslqOutcome::IterationLimit { .. } => "iteration_limit",
        }
    }
}

/// Running maximum of `1 / max_j |H_jj|`: every integer relation of the
/// input has Euclidean norm at least this large.
pub fn exclusion_bound(state: &PslqState) -> ArbReal {
    state.best_bound().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_params() {
        let p = PslqParams::new(24);
        p.validate().unwrap();
        assert_eq!(p.epsilon.to_decimal_string(5), "1.0000e-19");
        assert_eq!(p.iteration_cap(7), 3430);
        let g = p.gamma.to_f64();
        assert!((g - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        let exact = precision::sqrt(&(ArbReal::from_int(4, 60) / ArbReal::from_int(3, 60)), 60).unwrap();
        assert!(p.gamma.with_digits(60) > exact);
    }

    #[test]
    fn rejects_bad_params() {
        let p = PslqParams::new(24).with_gamma(ArbReal::parse_decimal("1.15", 24).unwrap());
        assert!(matches!(p.validate(), Err(PslqError::InvalidParams(_))));
        let p = PslqParams::new(24).with_epsilon(ArbReal::one(24));
        assert!(p.validate().is_err());
        let p = PslqParams::new(24).with_epsilon(ArbReal::zero(24));
        assert!(p.validate().is_err());
        let p = PslqParams::new(24).with_gamma(ArbReal::from_int(2, 24));
        assert!(p.validate().is_ok());
    }
}
