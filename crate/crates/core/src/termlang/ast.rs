use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::precision::BigRational;

/// Byte range `[start, end)` in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start + 1, self.end + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedConst {
    Pi,
    Gamma,
    Catalan,
}

impl NamedConst {
    pub fn name(self) -> &'static str {
        match self {
            NamedConst::Pi => "pi",
            NamedConst::Gamma => "gamma",
            NamedConst::Catalan => "catalan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Ln,
    Sqrt,
    Exp,
    Zeta,
    Li3,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Zeta => "zeta",
            Func::Li3 => "li3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Rational(BigRational),
    Const(NamedConst),
    Call(Func, Box<TermExpr>),
    /// `base ^ exponent`; the exponent is usually a rational literal but any
    /// expression is allowed.
    Pow(Box<TermExpr>, Box<TermExpr>),
    Product(Vec<TermExpr>),
    Sum(Vec<(Sign, TermExpr)>),
}

/// A parsed basis term. Equality is structural and ignores source spans.
#[derive(Debug, Clone)]
pub struct TermExpr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for TermExpr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl TermExpr {
    pub fn new(kind: ExprKind) -> Self {
        TermExpr {
            kind,
            span: Span::default(),
        }
    }

    pub fn with_span(kind: ExprKind, span: Span) -> Self {
        TermExpr { kind, span }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(ExprKind::Rational(q))
    }

    pub fn int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn constant(c: NamedConst) -> Self {
        Self::new(ExprKind::Const(c))
    }

    pub fn call(f: Func, arg: TermExpr) -> Self {
        Self::new(ExprKind::Call(f, Box::new(arg)))
    }

    pub fn pow(base: TermExpr, exponent: TermExpr) -> Self {
        Self::new(ExprKind::Pow(Box::new(base), Box::new(exponent)))
    }

    pub fn product(factors: Vec<TermExpr>) -> Self {
        Self::new(ExprKind::Product(factors))
    }

    pub fn sum(addends: Vec<(Sign, TermExpr)>) -> Self {
        Self::new(ExprKind::Sum(addends))
    }

    /// Folds the expression to an exact rational when it contains only
    /// rational literals, sums, products and integer powers.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.kind {
            ExprKind::Rational(q) => Some(q.clone()),
            ExprKind::Const(_) | ExprKind::Call(..) => None,
            ExprKind::Sum(addends) => addends.iter().try_fold(BigRational::zero(), |acc, (s, e)| {
                let v = e.as_rational()?;
                Some(match s {
                    Sign::Plus => acc + v,
                    Sign::Minus => acc - v,
                })
            }),
            ExprKind::Product(fs) => fs
                .iter()
                .try_fold(BigRational::one(), |acc, e| Some(acc * e.as_rational()?)),
            ExprKind::Pow(b, x) => {
                let x = x.as_rational()?;
                if !x.is_integer() {
                    return None;
                }
                let n = x.to_integer().to_i32().filter(|n| n.abs() <= 4096)?;
                let b = b.as_rational()?;
                if b.is_zero() && n < 0 {
                    return None;
                }
                Some(num_traits::pow::Pow::pow(&b, n))
            }
        }
    }

    /// Every rational literal in the tree.
    pub fn literals(&self) -> Vec<&BigRational> {
        let mut out = Vec::new();
        self.collect_literals(&mut out);
        out
    }

    fn collect_literals<'a>(&'a self, out: &mut Vec<&'a BigRational>) {
        match &self.kind {
            ExprKind::Rational(q) => out.push(q),
            ExprKind::Const(_) => {}
            ExprKind::Call(_, a) => a.collect_literals(out),
            ExprKind::Pow(b, x) => {
                b.collect_literals(out);
                x.collect_literals(out);
            }
            ExprKind::Product(fs) => fs.iter().for_each(|f| f.collect_literals(out)),
            ExprKind::Sum(adds) => adds.iter().for_each(|(_, e)| e.collect_literals(out)),
        }
    }

    fn is_sum(&self) -> bool {
        matches!(self.kind, ExprKind::Sum(_))
    }

    fn needs_parens_as_base(&self) -> bool {
        match &self.kind {
            ExprKind::Rational(q) => !q.is_integer() || q.is_negative(),
            ExprKind::Const(_) | ExprKind::Call(..) => false,
            _ => true,
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_negative() {
        write!(f, "(-")?;
        write_rational(f, &-q)?;
        return write!(f, ")");
    }
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Canonical, re-parseable rendering with lower-case names.
impl fmt::Display for TermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Rational(q) => write_rational(f, q),
            ExprKind::Const(c) => f.write_str(c.name()),
            ExprKind::Call(func, arg) => write!(f, "{}({})", func.name(), arg),
            ExprKind::Pow(base, exp) => {
                if base.needs_parens_as_base() {
                    write!(f, "({base})")?;
                } else {
                    write!(f, "{base}")?;
                }
                match &exp.kind {
                    ExprKind::Rational(q) if q.is_integer() && !q.is_negative() => {
                        write!(f, "^{}", q.numer())
                    }
                    _ => write!(f, "^({exp})"),
                }
            }
            ExprKind::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    if factor.is_sum() || matches!(factor.kind, ExprKind::Product(_)) {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
            ExprKind::Sum(addends) => {
                for (i, (sign, e)) in addends.iter().enumerate() {
                    match (i, sign) {
                        (0, Sign::Plus) => {}
                        (0, Sign::Minus) => f.write_str("-")?,
                        (_, Sign::Plus) => f.write_str(" + ")?,
                        (_, Sign::Minus) => f.write_str(" - ")?,
                    }
                    if e.is_sum() {
                        write!(f, "({e})")?;
                    } else {
                        write!(f, "{e}")?;
                    }
                }
                Ok(())
            }
        }
    }
}
