use num_traits::ToPrimitive;

use super::ast::{ExprKind, Func, NamedConst, TermExpr};

/// Transcendental weight of a product of powers of atoms.
///
/// Atoms: `pi`, `gamma` and `ln(algebraic)` weigh 1, `catalan` 2, `zeta(k)`
/// weighs `k`, `li3(x)` 3. Algebraic subexpressions weigh 0. `None` for
/// anything else: sums of transcendentals, `exp`, non-integer powers of
/// transcendentals, irrational exponents. The weight of `gamma` is a
/// convention.
pub fn weight(e: &TermExpr) -> Option<i64> {
    if is_algebraic(e) {
        return Some(0);
    }
    match &e.kind {
        ExprKind::Rational(_) => Some(0),
        ExprKind::Const(NamedConst::Pi | NamedConst::Gamma) => Some(1),
        ExprKind::Const(NamedConst::Catalan) => Some(2),
        ExprKind::Call(Func::Ln, arg) if is_algebraic(arg) => Some(1),
        ExprKind::Call(Func::Zeta, arg) => {
            let k = arg.as_rational().filter(|q| q.is_integer())?;
            k.to_integer().to_i64().filter(|k| *k >= 2)
        }
        ExprKind::Call(Func::Li3, _) => Some(3),
        ExprKind::Call(..) => None,
        ExprKind::Pow(base, exponent) => {
            let n = exponent.as_rational().filter(|q| q.is_integer())?;
            n.to_integer().to_i64()?.checked_mul(weight(base)?)
        }
        ExprKind::Product(factors) => factors
            .iter()
            .try_fold(0i64, |acc, f| acc.checked_add(weight(f)?)),
        ExprKind::Sum(_) => None,
    }
}

/// Built from rationals by `+`, `*`, `sqrt` and rational powers.
pub fn is_algebraic(e: &TermExpr) -> bool {
    match &e.kind {
        ExprKind::Rational(_) => true,
        ExprKind::Const(_) => false,
        ExprKind::Call(Func::Sqrt, arg) => is_algebraic(arg),
        ExprKind::Call(..) => false,
        ExprKind::Pow(base, exponent) => is_algebraic(base) && exponent.as_rational().is_some(),
        ExprKind::Product(fs) => fs.iter().all(is_algebraic),
        ExprKind::Sum(adds) => adds.iter().all(|(_, a)| is_algebraic(a)),
    }
}
