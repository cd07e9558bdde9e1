use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ast::{ExprKind, Func, NamedConst, Sign, Span, TermExpr};
use super::EvalError;
use crate::constants::{eval_constant, ConstantError, ConstantId};
use crate::precision::{self, ArbReal, BigRational, DomainError, GUARD_DIGITS};

/// Evaluates `e` to `digits` significant digits.
///
/// Every intermediate runs with [`GUARD_DIGITS`] extra digits. Subtrees that
/// fold to an exact rational are evaluated exactly.
pub fn evaluate(e: &TermExpr, digits: u32) -> Result<ArbReal, EvalError> {
    let work = digits + GUARD_DIGITS;
    Ok(eval_node(e, work)?.with_digits(digits))
}

fn fail(span: Span, function: &'static str, argument: String) -> EvalError {
    EvalError {
        span,
        error: DomainError { function, argument },
    }
}

fn at(span: Span) -> impl Fn(DomainError) -> EvalError {
    move |error| EvalError { span, error }
}

fn constant(id: ConstantId, span: Span, work: u32) -> Result<ArbReal, EvalError> {
    eval_constant(&id, work).map_err(|err| match err {
        ConstantError::Domain(error) => EvalError { span, error },
        ConstantError::UnsupportedConstant(what) => fail(span, "constant", what),
    })
}

fn eval_node(e: &TermExpr, work: u32) -> Result<ArbReal, EvalError> {
    match &e.kind {
        ExprKind::Rational(q) => Ok(ArbReal::from_rational(q, work)),
        ExprKind::Const(c) => {
            let id = match c {
                NamedConst::Pi => ConstantId::Pi,
                NamedConst::Gamma => ConstantId::EulerGamma,
                NamedConst::Catalan => ConstantId::Catalan,
            };
            constant(id, e.span, work)
        }
        ExprKind::Call(func, arg) => eval_call(*func, arg, e.span, work),
        ExprKind::Pow(base, exponent) => eval_pow(e, base, exponent, work),
        ExprKind::Product(factors) => {
            if let Some(q) = e.as_rational() {
                return Ok(ArbReal::from_rational(&q, work));
            }
            let mut acc = ArbReal::one(work);
            for f in factors {
                acc = &acc * &eval_node(f, work)?;
            }
            Ok(acc)
        }
        ExprKind::Sum(addends) => {
            if let Some(q) = e.as_rational() {
                return Ok(ArbReal::from_rational(&q, work));
            }
            let mut acc = ArbReal::zero(work);
            for (sign, a) in addends {
                let v = eval_node(a, work)?;
                acc = match sign {
                    Sign::Plus => &acc + &v,
                    Sign::Minus => &acc - &v,
                };
            }
            Ok(acc)
        }
    }
}

fn eval_call(func: Func, arg: &TermExpr, span: Span, work: u32) -> Result<ArbReal, EvalError> {
    match func {
        Func::Zeta => {
            let s = arg
                .as_rational()
                .filter(|q| q.is_integer())
                .and_then(|q| q.to_integer().to_u32())
                .filter(|s| *s >= 2)
                .ok_or_else(|| fail(span, "zeta", arg.to_string()))?;
            constant(ConstantId::ZetaInt(s), span, work)
        }
        Func::Li3 => {
            let x = arg
                .as_rational()
                .ok_or_else(|| fail(span, "li3", arg.to_string()))?;
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            if !(x.is_one() || x.abs() <= half) {
                return Err(fail(span, "li3", arg.to_string()));
            }
            if x.is_zero() {
                return Ok(ArbReal::zero(work));
            }
            constant(ConstantId::Li3(x), span, work)
        }
        Func::Ln => {
            if arg.as_rational() == Some(BigRational::from_integer(BigInt::from(2))) {
                return constant(ConstantId::Ln2, span, work);
            }
            let v = eval_node(arg, work)?;
            precision::ln(&v, work).map_err(at(span))
        }
        Func::Sqrt => precision::sqrt(&eval_node(arg, work)?, work).map_err(at(span)),
        Func::Exp => precision::exp(&eval_node(arg, work)?, work).map_err(at(span)),
    }
}

fn eval_pow(
    whole: &TermExpr,
    base: &TermExpr,
    exponent: &TermExpr,
    work: u32,
) -> Result<ArbReal, EvalError> {
    let span = whole.span;
    if let Some(q) = whole.as_rational() {
        return Ok(ArbReal::from_rational(&q, work));
    }
    let b = eval_node(base, work)?;
    match exponent.as_rational() {
        Some(q) if q.is_integer() => {
            let n = q
                .to_integer()
                .to_i64()
                .filter(|n| n.abs() <= 1 << 31)
                .ok_or_else(|| fail(span, "pow", exponent.to_string()))?;
            b.powi(n).ok_or_else(|| fail(span, "pow", b.to_decimal_string(12)))
        }
        Some(q) => {
            let den = q
                .denom()
                .to_u32()
                .ok_or_else(|| fail(span, "pow", exponent.to_string()))?;
            if b.is_negative() && den % 2 == 0 {
                return Err(fail(span, "pow", b.to_decimal_string(12)));
            }
            if b.is_zero() {
                return if q.is_positive() {
                    Ok(ArbReal::zero(work))
                } else {
                    Err(fail(span, "pow", "0".into()))
                };
            }
            precision::pow_ratio(&b, q.numer(), den, work).map_err(at(span))
        }
        None => {
            let x = eval_node(exponent, work)?;
            precision::pow(&b, &x, work).map_err(at(span))
        }
    }
}
