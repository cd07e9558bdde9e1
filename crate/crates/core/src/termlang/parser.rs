//! Recursive-descent parser for basis terms.
//!
//! ```text
//! expr   := ['-'] term {('+'|'-') term}
//! term   := factor {'*' factor}
//! factor := base ['^' factor]
//! base   := INTEGER | INTEGER '/' INTEGER | NAME | NAME '(' expr ')' | '(' expr ')'
//! ```
//!
//! Names are case-insensitive. Whitespace is ignored; implicit
//! multiplication is rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::{ExprKind, Func, NamedConst, Sign, Span, TermExpr};
use super::TermError;
use crate::precision::BigRational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Name(n) => format!("name {n:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, TermError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(src[start..i].parse().unwrap()), Span::new(start, i)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Name(src[start..i].to_ascii_lowercase()), Span::new(start, i)));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = src[start..].chars().next().unwrap();
                return Err(TermError::Syntax {
                    offset: start + 1,
                    expected: vec!["a token".into()],
                    found: format!("{ch:?}"),
                });
            }
        };
        i += 1;
        out.push((tok, Span::new(start, i)));
    }
    out.push((Tok::End, Span::new(src.len(), src.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn at(&self) -> &(Tok, Span) {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn peek(&self) -> &Tok {
        &self.at().0
    }

    fn span(&self) -> Span {
        self.at().1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.at().clone();
        self.pos += 1;
        t
    }

    fn error(&self, expected: &[&str]) -> TermError {
        TermError::Syntax {
            offset: self.span().start + 1,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> Result<TermExpr, TermError> {
        let start = self.span();
        let mut addends = Vec::new();
        let mut explicit = false;
        let first_sign = if *self.peek() == Tok::Minus {
            self.bump();
            explicit = true;
            Sign::Minus
        } else {
            Sign::Plus
        };
        addends.push((first_sign, self.term()?));
        loop {
            let sign = match self.peek() {
                Tok::Plus => Sign::Plus,
                Tok::Minus => Sign::Minus,
                _ => break,
            };
            self.bump();
            addends.push((sign, self.term()?));
        }
        if addends.len() == 1 && !explicit {
            return Ok(addends.pop().unwrap().1);
        }
        let span = start.to(addends.last().unwrap().1.span);
        Ok(TermExpr::with_span(ExprKind::Sum(addends), span))
    }

    fn term(&mut self) -> Result<TermExpr, TermError> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        let span = factors[0].span.to(factors.last().unwrap().span);
        Ok(TermExpr::with_span(ExprKind::Product(factors), span))
    }

    fn factor(&mut self) -> Result<TermExpr, TermError> {
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exponent = self.factor()?;
            let span = base.span.to(exponent.span);
            return Ok(TermExpr::with_span(
                ExprKind::Pow(Box::new(base), Box::new(exponent)),
                span,
            ));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<TermExpr, TermError> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den_tok, den_span) = self.bump();
                    let Tok::Int(d) = den_tok else {
                        self.pos -= 1;
                        return Err(self.error(&["integer"]));
                    };
                    if d.is_zero() {
                        return Err(TermError::Syntax {
                            offset: den_span.start + 1,
                            expected: vec!["nonzero denominator".into()],
                            found: "0".into(),
                        });
                    }
                    let q = BigRational::new(n, d);
                    return Ok(TermExpr::with_span(ExprKind::Rational(q), span.to(den_span)));
                }
                Ok(TermExpr::with_span(
                    ExprKind::Rational(BigRational::from_integer(n)),
                    span,
                ))
            }
            Tok::Name(name) => {
                let constant = match name.as_str() {
                    "pi" => Some(NamedConst::Pi),
                    "gamma" => Some(NamedConst::Gamma),
                    "catalan" => Some(NamedConst::Catalan),
                    _ => None,
                };
                if let Some(c) = constant {
                    return Ok(TermExpr::with_span(ExprKind::Const(c), span));
                }
                let func = match name.as_str() {
                    "ln" => Func::Ln,
                    "sqrt" => Func::Sqrt,
                    "exp" => Func::Exp,
                    "zeta" => Func::Zeta,
                    "li3" => Func::Li3,
                    _ => {
                        return Err(TermError::UnknownName {
                            name,
                            offset: span.start + 1,
                        })
                    }
                };
                if *self.peek() != Tok::LParen {
                    return Err(self.error(&["'('"]));
                }
                self.bump();
                let arg = self.expr()?;
                let close = self.span();
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["')'", "'+'", "'-'", "'*'", "'^'"]));
                }
                self.bump();
                Ok(TermExpr::with_span(
                    ExprKind::Call(func, Box::new(arg)),
                    span.to(close),
                ))
            }
            Tok::LParen => {
                let mut inner = self.expr()?;
                let close = self.span();
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["')'", "'+'", "'-'", "'*'", "'^'"]));
                }
                self.bump();
                inner.span = span.to(close);
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error(&["integer", "name", "'('"]))
            }
        }
    }
}

/// Parses one expression; trailing input is an error.
pub fn parse(src: &str) -> Result<TermExpr, TermError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> TermExpr {
        TermExpr::int(v)
    }

    fn pi() -> TermExpr {
        TermExpr::constant(NamedConst::Pi)
    }

    #[test]
    fn sample_basis_terms() {
        let e = parse("pi^2*ln(2)").unwrap();
        assert_eq!(
            e,
            TermExpr::product(vec![
                TermExpr::pow(pi(), int(2)),
                TermExpr::call(Func::Ln, int(2)),
            ])
        );
        let e = parse("ln(1+sqrt(2))^3").unwrap();
        let inner = TermExpr::sum(vec![
            (Sign::Plus, int(1)),
            (Sign::Plus, TermExpr::call(Func::Sqrt, int(2))),
        ]);
        assert_eq!(e, TermExpr::pow(TermExpr::call(Func::Ln, inner), int(3)));
        // mixed-case names
        assert_eq!(parse("Pi^2*ln(2)").unwrap(), parse("pi^2*LN(2)").unwrap());
        assert!(parse("Zeta(3)").is_ok());
        assert!(parse("Pi*Catalan").is_ok());
    }

    #[test]
    fn unclosed_call_reports_offset_six() {
        match parse("zeta(") {
            Err(TermError::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 6);
                assert!(expected.iter().any(|e| e.contains("integer")));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_implicit_multiplication_and_inner_unary_minus() {
        assert!(matches!(parse("2pi"), Err(TermError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("pi*-2"), Err(TermError::Syntax { offset: 4, .. })));
        assert!(parse("0 - 2").is_ok());
        assert!(parse("-2 + pi").is_ok());
        assert!(parse("pi^(-1/3)").is_ok());
    }

    #[test]
    fn unknown_names_and_stray_characters() {
        assert_eq!(
            parse("pi*foo(2)"),
            Err(TermError::UnknownName {
                name: "foo".into(),
                offset: 4
            })
        );
        assert!(matches!(parse("1.5"), Err(TermError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("pi / 2"), Err(TermError::Syntax { offset: 4, .. })));
        assert!(matches!(parse("1/0"), Err(TermError::Syntax { offset: 3, .. })));
        assert!(matches!(parse("ln 2"), Err(TermError::Syntax { .. })));
        assert!(matches!(parse(""), Err(TermError::Syntax { offset: 1, .. })));
        assert!(matches!(parse("(pi"), Err(TermError::Syntax { offset: 4, .. })));
    }

    #[test]
    fn rational_literals_are_exact_and_reduced() {
        let e = parse("6/4").unwrap();
        assert_eq!(e, TermExpr::rational(BigRational::new(3.into(), 2.into())));
        let e = parse("123456789012345678901234567890").unwrap();
        assert!(matches!(e.kind, ExprKind::Rational(_)));
    }

    #[test]
    fn power_is_right_associative() {
        let e = parse("2^3^2").unwrap();
        assert_eq!(e, TermExpr::pow(int(2), TermExpr::pow(int(3), int(2))));
        // the rational literal binds before '^'
        let e = parse("525587^(1/5123)^(1/2)").unwrap();
        let half = TermExpr::rational(BigRational::new(1.into(), 2.into()));
        let inv = TermExpr::rational(BigRational::new(1.into(), 5123.into()));
        assert_eq!(e, TermExpr::pow(int(525587), TermExpr::pow(inv, half)));
    }

    #[test]
    fn spans_cover_source() {
        let src = "pi*ln(1+sqrt(2))";
        let e = parse(src).unwrap();
        assert_eq!(e.span, Span::new(0, src.len()));
        if let ExprKind::Product(fs) = &e.kind {
            assert_eq!(&src[fs[1].span.start..fs[1].span.end], "ln(1+sqrt(2))");
        } else {
            panic!();
        }
    }
}
