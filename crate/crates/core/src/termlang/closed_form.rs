use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ast::{ExprKind, TermExpr};
use crate::precision::BigRational;

/// `target = constant_term + sum coefficient * term`, with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub target: TermExpr,
    pub constant_term: BigRational,
    pub terms: Vec<(BigRational, TermExpr)>,
}

impl ClosedForm {
    pub fn new(target: TermExpr, constant_term: BigRational, terms: Vec<(BigRational, TermExpr)>) -> Self {
        let terms = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        ClosedForm {
            target,
            constant_term,
            terms,
        }
    }

    /// The right-hand side as an expression tree.
    pub fn to_expr(&self) -> Result<TermExpr, super::TermError> {
        super::parse(&format_closed_form(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub is_simple: bool,
    pub term_count: usize,
    #[serde(serialize_with = "crate::precision::serialize_bigint")]
    pub max_abs_integer: BigInt,
}

pub const SIMPLE_MAX_TERMS: usize = 10;
pub const SIMPLE_MAX_INTEGER: u32 = 500;

fn write_rational_abs(out: &mut String, q: &BigRational) {
    let q = q.abs();
    if q.is_integer() {
        write!(out, "{}", q.numer()).unwrap();
    } else {
        write!(out, "{}/{}", q.numer(), q.denom()).unwrap();
    }
}

/// Renders `-5/197 + 11/394*pi^2*ln(2) - ...`; unit coefficients are
/// omitted and an empty form renders as `0`.
pub fn format_closed_form(cf: &ClosedForm) -> String {
    let mut out = String::new();
    let push_sign = |out: &mut String, negative: bool| {
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
    };
    if !cf.constant_term.is_zero() {
        push_sign(&mut out, cf.constant_term.is_negative());
        write_rational_abs(&mut out, &cf.constant_term);
    }
    for (coef, term) in &cf.terms {
        push_sign(&mut out, coef.is_negative());
        if !coef.abs().is_one() {
            write_rational_abs(&mut out, coef);
            out.push('*');
        }
        if matches!(term.kind, ExprKind::Sum(_)) {
            write!(out, "({term})").unwrap();
        } else {
            write!(out, "{term}").unwrap();
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Few terms and small integers: fewer than ten terms and every numerator
/// and denominator (coefficients and literals inside terms) below 500.
pub fn classify_simplicity(cf: &ClosedForm) -> SimplicityVerdict {
    let has_constant = !cf.constant_term.is_zero() || cf.terms.is_empty();
    let term_count = cf.terms.len() + usize::from(has_constant);
    let mut max = BigInt::zero();
    let mut see = |q: &BigRational| {
        for v in [q.numer().abs(), q.denom().abs()] {
            if v > max {
                max = v;
            }
        }
    };
    see(&cf.constant_term);
    for (coef, term) in &cf.terms {
        see(coef);
        term.literals().into_iter().for_each(&mut see);
    }
    let is_simple = term_count < SIMPLE_MAX_TERMS && max < BigInt::from(SIMPLE_MAX_INTEGER);
    SimplicityVerdict {
        is_simple,
        term_count,
        max_abs_integer: max,
    }
}
