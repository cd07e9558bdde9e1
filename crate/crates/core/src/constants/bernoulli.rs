use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::precision::{BigRational, DomainError};

/// Default largest index served by [`bernoulli`].
pub const DEFAULT_BERNOULLI_CAP: u32 = 200;

/// Memoized exact Bernoulli numbers `B_0, B_2, B_4, ...`.
///
/// Odd-index values are not stored: `B_1 = -1/2` and every later odd entry is zero.
pub struct BernoulliTable {
    cap: u32,
    even: RwLock<Vec<BigRational>>,
}

impl BernoulliTable {
    pub fn new(cap: u32) -> Self {
        BernoulliTable {
            cap,
            even: RwLock::new(vec![BigRational::one()]),
        }
    }

    /// The process-wide table with [`DEFAULT_BERNOULLI_CAP`].
    pub fn global() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(DEFAULT_BERNOULLI_CAP))
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// `B_index` for an even index in `2..=cap`.
    pub fn get(&self, index: u32) -> Result<BigRational, DomainError> {
        if index < 2 || index % 2 == 1 || index > self.cap {
            return Err(DomainError {
                function: "bernoulli",
                argument: index.to_string(),
            });
        }
        Ok(self.get_even_unchecked(index))
    }

    /// Any index, ignoring the cap. Used by internal evaluators.
    pub(crate) fn get_any(&self, index: u32) -> BigRational {
        match index {
            1 => BigRational::new(BigInt::from(-1), BigInt::from(2)),
            i if i % 2 == 1 => BigRational::zero(),
            i => self.get_even_unchecked(i),
        }
    }

    fn get_even_unchecked(&self, index: u32) -> BigRational {
        let slot = (index / 2) as usize;
        if let Some(v) = self.even.read().unwrap().get(slot) {
            return v.clone();
        }
        let mut even = self.even.write().unwrap();
        while even.len() <= slot {
            let m = 2 * even.len() as u32;
            let next = next_even(&even, m);
            even.push(next);
        }
        even[slot].clone()
    }
}

/// Solves `sum_{j=0}^{m} C(m+1, j) B_j = 0` for `B_m`, `m` even, given
/// `B_0, B_2, ..., B_{m-2}` and `B_1 = -1/2`.
fn next_even(even: &[BigRational], m: u32) -> BigRational {
    let m1 = BigInt::from(m + 1);
    let mut acc = BigRational::zero();
    // C(m+1, j) for j = 0, 1, 2, ...
    let mut binom = BigInt::one();
    for j in 0..m {
        if j % 2 == 0 {
            acc += BigRational::from_integer(binom.clone()) * &even[(j / 2) as usize];
        } else if j == 1 {
            acc -= BigRational::new(binom.clone(), BigInt::from(2));
        }
        binom = binom * (&m1 - BigInt::from(j)) / BigInt::from(j + 1);
    }
    // binom is now C(m+1, m) = m + 1
    -acc / BigRational::from_integer(binom)
}

/// `B_index` from the global table: even `index` in `2..=200`.
pub fn bernoulli(index: u32) -> Result<BigRational, DomainError> {
    BernoulliTable::global().get(index)
}
