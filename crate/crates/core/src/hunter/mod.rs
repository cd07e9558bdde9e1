//! End-to-end relation hunts: evaluate `[target, basis...]`, run PSLQ,
//! solve the relation for the target and measure the result.

mod corpus;
mod report;

use std::time::Instant;

use num_traits::Zero;
use thiserror::Error;

use crate::precision::{digit_accuracy, ArbReal, BigInteger, BigRational, DigitAccuracy};
use crate::pslq::{pslq_run_with_state, IntegerRelation, PslqError, PslqOutcome, PslqParams};
use crate::termlang::{
    classify_simplicity, evaluate, ClosedForm, EvalError, SimplicityVerdict, TermExpr,
};

pub use corpus::{run_corpus, validate_corpus_json, CaseKind, CaseResult, CorpusReport, CASE_NAMES};
pub use report::{validate_report_json, SCHEMA_VERSION};

/// Smallest precision accepted by [`hunt`].
pub const MIN_HUNT_DIGITS: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputMode {
    Json,
    #[default]
    Text,
}

#[derive(Debug, Clone)]
pub struct HuntSpec {
    pub target: TermExpr,
    pub basis: Vec<TermExpr>,
    pub digits: u32,
    pub params: PslqParams,
    pub output: OutputMode,
}

impl HuntSpec {
    /// Default PSLQ parameters at `digits`.
    pub fn new(target: TermExpr, basis: Vec<TermExpr>, digits: u32) -> Self {
        HuntSpec {
            target,
            basis,
            digits,
            params: PslqParams::new(digits),
            output: OutputMode::default(),
        }
    }

    pub fn validate(&self) -> Result<(), HuntError> {
        if self.basis.is_empty() {
            return Err(HuntError::InvalidSpec("the basis is empty".into()));
        }
        if let Some(t) = self.basis.iter().find(|t| **t == self.target) {
            return Err(HuntError::InvalidSpec(format!("the target {t} also appears in the basis")));
        }
        if self.digits < MIN_HUNT_DIGITS {
            return Err(HuntError::InvalidSpec(format!(
                "precision must be at least {MIN_HUNT_DIGITS} digits, got {}",
                self.digits
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HuntError {
    #[error("invalid hunt: {0}")]
    InvalidSpec(String),
    #[error("evaluating {term}: {error}")]
    Eval { term: String, error: EvalError },
    #[error(transparent)]
    Pslq(#[from] PslqError),
    #[error("the relation does not involve the target")]
    TargetAbsent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HuntOutcome {
    RelationFound,
    /// A relation among the basis terms alone; reported, not solvable.
    TargetAbsent,
    NoRelation,
    PrecisionExhausted,
    IterationLimit,
}

impl HuntOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            HuntOutcome::RelationFound => "relation_found",
            HuntOutcome::TargetAbsent => "target_absent",
            HuntOutcome::NoRelation => "no_relation",
            HuntOutcome::PrecisionExhausted => "precision_exhausted",
            HuntOutcome::IterationLimit => "iteration_limit",
        }
    }

    /// Exit status used by the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            HuntOutcome::RelationFound => 0,
            HuntOutcome::TargetAbsent | HuntOutcome::NoRelation => 2,
            HuntOutcome::PrecisionExhausted | HuntOutcome::IterationLimit => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HuntReport {
    pub target: TermExpr,
    pub basis: Vec<TermExpr>,
    pub digits: u32,
    pub gamma: ArbReal,
    pub eps: ArbReal,
    pub outcome: HuntOutcome,
    pub relation: Option<IntegerRelation>,
    pub closed_form: Option<ClosedForm>,
    pub digit_accuracy: Option<DigitAccuracy>,
    pub confidence: Option<ArbReal>,
    pub exclusion_bound: ArbReal,
    pub simplicity: Option<SimplicityVerdict>,
    pub iterations: u64,
    pub wall_ms: u64,
}

/// Rearranges `a_1 t + a_2 b_2 + ... + a_n b_n = 0` into
/// `t = -(a_2 b_2 + ... + a_n b_n) / a_1`. Basis terms that are rational
/// numbers are folded into the constant term.
pub fn solve_for_target(
    coefficients: &[BigInteger],
    target: &TermExpr,
    basis: &[TermExpr],
) -> Result<ClosedForm, HuntError> {
    if coefficients.len() != basis.len() + 1 {
        return Err(HuntError::InvalidSpec(format!(
            "relation has {} entries for {} basis terms",
            coefficients.len(),
            basis.len()
        )));
    }
    let a1 = &coefficients[0];
    if a1.is_zero() {
        return Err(HuntError::TargetAbsent);
    }
    let mut constant = BigRational::zero();
    let mut terms = Vec::new();
    for (a, term) in coefficients[1..].iter().zip(basis) {
        let coef = BigRational::new(-a.clone(), a1.clone());
        match term.as_rational() {
            Some(q) => constant += coef * q,
            None => terms.push((coef, term.clone())),
        }
    }
    Ok(ClosedForm::new(target.clone(), constant, terms))
}

fn eval_term(term: &TermExpr, digits: u32) -> Result<ArbReal, HuntError> {
    evaluate(term, digits).map_err(|error| HuntError::Eval {
        term: term.to_string(),
        error,
    })
}

/// Evaluates a closed form's right-hand side at `digits`.
pub fn evaluate_closed_form(cf: &ClosedForm, digits: u32) -> Result<ArbReal, HuntError> {
    let work = digits + crate::precision::GUARD_DIGITS;
    let mut acc = ArbReal::from_rational(&cf.constant_term, work);
    for (coef, term) in &cf.terms {
        let v = eval_term(term, work)?;
        acc = &acc + &(&ArbReal::from_rational(coef, work) * &v);
    }
    Ok(acc.with_digits(digits))
}

/// Runs one hunt.
pub fn hunt(spec: &HuntSpec) -> Result<HuntReport, HuntError> {
    let started = Instant::now();
    spec.validate()?;
    let p = spec.digits;
    let mut params = spec.params.clone();
    params.digits = p;

    let mut x = Vec::with_capacity(spec.basis.len() + 1);
    x.push(eval_term(&spec.target, p)?);
    for t in &spec.basis {
        x.push(eval_term(t, p)?);
    }

    let (outcome, state) = pslq_run_with_state(&x, &params)?;
    let exclusion_bound = outcome.bound().clone();
    let mut report = HuntReport {
        target: spec.target.clone(),
        basis: spec.basis.clone(),
        digits: p,
        gamma: params.gamma.clone(),
        eps: params.epsilon.clone(),
        outcome: HuntOutcome::NoRelation,
        relation: None,
        closed_form: None,
        digit_accuracy: None,
        confidence: None,
        exclusion_bound,
        simplicity: None,
        iterations: state.iteration(),
        wall_ms: 0,
    };

    match outcome {
        PslqOutcome::RelationFound { relation, .. } => {
            report.confidence = Some(relation.confidence.clone());
            match solve_for_target(&relation.coefficients, &spec.target, &spec.basis) {
                Ok(cf) => {
                    let approx = evaluate_closed_form(&cf, p)?;
                    let reference = eval_term(&spec.target, (3 * p).div_ceil(2))?;
                    // a zero reference has no relative accuracy
                    report.digit_accuracy = digit_accuracy(&approx, &reference).ok();
                    report.simplicity = Some(classify_simplicity(&cf));
                    report.closed_form = Some(cf);
                    report.outcome = HuntOutcome::RelationFound;
                }
                Err(HuntError::TargetAbsent) => report.outcome = HuntOutcome::TargetAbsent,
                Err(e) => return Err(e),
            }
            report.relation = Some(relation);
        }
        PslqOutcome::NoRelation { .. } => report.outcome = HuntOutcome::NoRelation,
        PslqOutcome::PrecisionExhausted { .. } => report.outcome = HuntOutcome::PrecisionExhausted,
        PslqOutcome::IterationLimit { .. } => report.outcome = HuntOutcome::IterationLimit,
    }
    if report.closed_form.is_some() && report.digit_accuracy.is_none() {
        report.digit_accuracy = Some(DigitAccuracy::Digits(0));
    }
    report.wall_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

impl HuntReport {
    /// `|closed form - target| / |target|` with both sides at the hunt precision.
    pub fn reconstruction_error(&self) -> Option<ArbReal> {
        let cf = self.closed_form.as_ref()?;
        let lhs = evaluate_closed_form(cf, self.digits).ok()?;
        let rhs = evaluate(&self.target, self.digits).ok()?;
        Some((&(&lhs - &rhs) / &rhs).abs())
    }

    pub fn is_simple(&self) -> bool {
        self.simplicity.as_ref().is_some_and(|s| s.is_simple)
    }
}
