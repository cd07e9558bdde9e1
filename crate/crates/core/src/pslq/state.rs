use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{IntegerRelation, PslqError, PslqOutcome, PslqParams};
use crate::precision::{self, gcd_all, ArbReal, BigInteger, GUARD_DIGITS};

/// Working state of one PSLQ run.
///
/// `H` is stored row-major as `n` rows of `n - 1` entries. `A` and `B` are
/// exact integer matrices with `A B = I`; the relation candidates are the
/// columns of `B`.
#[derive(Debug, Clone)]
pub struct PslqState {
    n: usize,
    digits: u32,
    /// Internal arithmetic precision, `digits + GUARD_DIGITS`.
    work: u32,
    x: Vec<ArbReal>,
    x_hat: Vec<ArbReal>,
    y: Vec<ArbReal>,
    h: Vec<Vec<ArbReal>>,
    a: Vec<Vec<BigInteger>>,
    b: Vec<Vec<BigInteger>>,
    iteration: u64,
    best_bound: ArbReal,
    gamma_powers: Vec<ArbReal>,
    breakdown: ArbReal,
}

fn identity(n: usize) -> Vec<Vec<BigInteger>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl PslqState {
    /// Normalizes `x`, builds `H` from partial norms and performs a full
    /// Hermite reduction.
    pub fn initialize(x: &[ArbReal], params: &PslqParams) -> Result<Self, PslqError> {
        params.validate()?;
        let n = x.len();
        if n < 2 {
            return Err(PslqError::DimensionError(n));
        }
        if let Some(i) = x.iter().position(ArbReal::is_zero) {
            return Err(PslqError::ZeroEntry(i));
        }
        let p = params.digits;
        let w = p + GUARD_DIGITS;
        let xs: Vec<ArbReal> = x.iter().map(|v| v.with_digits(p).with_digits(w)).collect();

        let norm2 = xs.iter().fold(ArbReal::zero(w), |acc, v| &acc + &(v * v));
        let norm = precision::sqrt(&norm2, w).expect("positive");
        let x_hat: Vec<ArbReal> = xs.iter().map(|v| v / &norm).collect();

        // s[k] = sqrt(sum_{j >= k} x_hat_j^2)
        let mut s = vec![ArbReal::zero(w); n];
        let mut tail = ArbReal::zero(w);
        for k in (0..n).rev() {
            tail = &tail + &(&x_hat[k] * &x_hat[k]);
            s[k] = precision::sqrt(&tail, w).expect("nonnegative");
        }

        let mut h = vec![vec![ArbReal::zero(w); n - 1]; n];
        for j in 0..n - 1 {
            h[j][j] = &s[j + 1] / &s[j];
            let denom = &s[j] * &s[j + 1];
            for (i, row) in h.iter_mut().enumerate().skip(j + 1) {
                row[j] = -&(&(&x_hat[i] * &x_hat[j]) / &denom);
            }
        }

        let mut gamma_powers = Vec::with_capacity(n - 1);
        let mut g = params.gamma.with_digits(w);
        for _ in 0..n - 1 {
            gamma_powers.push(g.clone());
            g = &g * &params.gamma;
        }

        let breakdown = ArbReal::parse_decimal(&format!("1e-{}", p.saturating_sub(3)), p)
            .expect("valid literal");

        let mut st = PslqState {
            n,
            digits: p,
            work: w,
            x: x.to_vec(),
            y: x_hat.clone(),
            x_hat,
            h,
            a: identity(n),
            b: identity(n),
            iteration: 0,
            best_bound: ArbReal::zero(p),
            gamma_powers,
            breakdown,
        };
        for i in 1..n {
            st.reduce_row(i, i - 1)?;
        }
        st.update_bound();
        Ok(st)
    }

    /// Hermite-reduces row `i` against columns `top, top-1, ..., 0`.
    fn reduce_row(&mut self, i: usize, top: usize) -> Result<(), PslqError> {
        for j in (0..=top).rev() {
            let q = self.h[i][j]
                .checked_div(&self.h[j][j])
                .ok_or(PslqError::NumericBreakdown)?;
            let t = q.nearest_int();
            if t.is_zero() {
                continue;
            }
            let tr = ArbReal::from_bigint(&t, self.work);
            self.y[j] = &self.y[j] + &(&tr * &self.y[i]);
            for k in 0..=j {
                let d = &tr * &self.h[j][k];
                self.h[i][k] = &self.h[i][k] - &d;
            }
            for k in 0..self.n {
                let d = &t * &self.a[j][k];
                self.a[i][k] -= d;
                let d = &t * &self.b[k][i];
                self.b[k][j] += d;
            }
        }
        Ok(())
    }

    fn max_diag(&self) -> ArbReal {
        (0..self.n - 1)
            .map(|j| self.h[j][j].abs())
            .max_by(|a, b| a.cmp_value(b))
            .expect("n >= 2")
    }

    fn update_bound(&mut self) {
        let m = self.max_diag();
        if let Some(inv) = ArbReal::one(self.digits).checked_div(&m) {
            if inv > self.best_bound {
                self.best_bound = inv;
            }
        }
    }

    /// One PSLQ step. Returns `NumericBreakdown` once a diagonal entry of `H`
    /// drops below `10^(3-P)`; the step itself is still applied.
    pub fn iterate(&mut self) -> Result<(), PslqError> {
        let n = self.n;
        let r = (0..n - 1)
            .map(|i| (i, &self.gamma_powers[i] * &self.h[i][i].abs()))
            .max_by(|(i, a), (j, b)| a.cmp_value(b).then(j.cmp(i)))
            .map(|(i, _)| i)
            .expect("n >= 2");

        self.y.swap(r, r + 1);
        self.a.swap(r, r + 1);
        self.h.swap(r, r + 1);
        for row in self.b.iter_mut() {
            row.swap(r, r + 1);
        }

        if r + 2 < n {
            let p = self.work;
            let h0 = self.h[r][r].clone();
            let h1 = self.h[r][r + 1].clone();
            let t0 = precision::sqrt(&(&(&h0 * &h0) + &(&h1 * &h1)), p).expect("nonnegative");
            let t1 = h0.checked_div(&t0).ok_or(PslqError::NumericBreakdown)?;
            let t2 = h1.checked_div(&t0).ok_or(PslqError::NumericBreakdown)?;
            for i in r..n {
                let t3 = self.h[i][r].clone();
                let t4 = self.h[i][r + 1].clone();
                self.h[i][r] = &(&t1 * &t3) + &(&t2 * &t4);
                self.h[i][r + 1] = &(&t1 * &t4) - &(&t2 * &t3);
            }
            self.h[r][r + 1] = ArbReal::zero(p);
        }

        for i in r + 1..n {
            self.reduce_row(i, (i - 1).min(r + 1))?;
        }
        self.update_bound();
        self.iteration += 1;

        let small = (0..n - 1).any(|j| self.h[j][j].cmp_abs(&self.breakdown) == Ordering::Less);
        if small {
            Err(PslqError::NumericBreakdown)
        } else {
            Ok(())
        }
    }

    /// Index of the smallest `|y_j|`, lowest index on ties.
    fn min_y(&self) -> usize {
        let mut best = 0;
        for j in 1..self.n {
            if self.y[j].cmp_abs(&self.y[best]) == Ordering::Less {
                best = j;
            }
        }
        best
    }

    fn detected(&self, epsilon: &ArbReal) -> Option<usize> {
        let m = self.min_y();
        (self.y[m].cmp_abs(epsilon) == Ordering::Less).then_some(m)
    }

    fn relation_at(&self, col: usize) -> IntegerRelation {
        let mut coefficients: Vec<BigInteger> = self.b.iter().map(|row| row[col].clone()).collect();
        let g = gcd_all(&coefficients);
        if !g.is_zero() && !g.is_one() {
            coefficients.iter_mut().for_each(|c| *c /= &g);
        }
        if coefficients.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            coefficients.iter_mut().for_each(|c| *c = -&*c);
        }
        let work = self.x.iter().map(ArbReal::digits).max().unwrap_or(self.digits) + GUARD_DIGITS;
        let residual = coefficients
            .iter()
            .zip(&self.x)
            .fold(ArbReal::zero(work), |acc, (c, x)| {
                &acc + &(&ArbReal::from_bigint(c, work) * &x.with_digits(work))
            })
            .abs();
        let max_y = self
            .y
            .iter()
            .map(ArbReal::abs)
            .max_by(|a, b| a.cmp_value(b))
            .expect("n >= 2");
        let confidence = self.y[col]
            .abs()
            .checked_div(&max_y)
            .unwrap_or_else(|| ArbReal::zero(self.digits));
        IntegerRelation {
            coefficients,
            residual,
            confidence,
            iterations: self.iteration,
        }
    }

    fn exceeds_cap(&self, params: &PslqParams) -> bool {
        params
            .max_coeff
            .as_ref()
            .is_some_and(|k| self.best_bound > ArbReal::from_bigint(k, self.digits))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn x_hat(&self) -> &[ArbReal] {
        &self.x_hat
    }

    pub fn y(&self) -> &[ArbReal] {
        &self.y
    }

    pub fn h(&self) -> &[Vec<ArbReal>] {
        &self.h
    }

    pub fn a(&self) -> &[Vec<BigInteger>] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<BigInteger>] {
        &self.b
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn best_bound(&self) -> &ArbReal {
        &self.best_bound
    }
}

/// Runs PSLQ to detection, breakdown, the iteration cap or the coefficient cap.
pub fn pslq_run(x: &[ArbReal], params: &PslqParams) -> Result<PslqOutcome, PslqError> {
    pslq_run_with_state(x, params).map(|(o, _)| o)
}

/// As [`pslq_run`], also returning the final state.
pub fn pslq_run_with_state(
    x: &[ArbReal],
    params: &PslqParams,
) -> Result<(PslqOutcome, PslqState), PslqError> {
    let mut st = PslqState::initialize(x, params)?;
    let cap = params.iteration_cap(st.n);
    let outcome = loop {
        if let Some(col) = st.detected(&params.epsilon) {
            let relation = st.relation_at(col);
            let too_big = params
                .max_coeff
                .as_ref()
                .is_some_and(|k| relation.max_abs() > *k);
            let bound = st.best_bound.clone();
            break if too_big {
                PslqOutcome::NoRelation { bound }
            } else {
                PslqOutcome::RelationFound { relation, bound }
            };
        }
        if st.exceeds_cap(params) {
            break PslqOutcome::NoRelation {
                bound: st.best_bound.clone(),
            };
        }
        if st.iteration >= cap {
            break PslqOutcome::IterationLimit {
                bound: st.best_bound.clone(),
            };
        }
        if let Err(e) = st.iterate() {
            debug_assert_eq!(e, PslqError::NumericBreakdown);
            if let Some(col) = st.detected(&params.epsilon) {
                let relation = st.relation_at(col);
                let bound = st.best_bound.clone();
                break PslqOutcome::RelationFound { relation, bound };
            }
            break PslqOutcome::PrecisionExhausted {
                bound: st.best_bound.clone(),
            };
        }
    };
    Ok((outcome, st))
}
