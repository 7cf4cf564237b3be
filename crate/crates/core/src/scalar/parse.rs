//! Recursive-descent parser for the scalar expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' uint)?
//! base   := int | 'i' | var | '(' expr ')'
//! ```
//!
//! Parsing evaluates straight into canonical form.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::expr::ScalarExpr;
use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut k = 0;
    while k < bytes.len() {
        let (pos, ch) = bytes[k];
        if ch.is_whitespace() {
            k += 1;
            continue;
        }
        let simple = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((pos, t));
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < bytes.len() && bytes[k].1.is_ascii_digit() {
                k += 1;
            }
            let s: String = bytes[start..k].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits parse as integer"))));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = k;
            while k < bytes.len() && (bytes[k].1.is_alphanumeric() || bytes[k].1 == '_') {
                k += 1;
            }
            let s: String = bytes[start..k].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Ident(s)));
        } else {
            return Err(Error::Syntax { offset: pos, message: format!("unexpected character `{ch}`") });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a, S: AsRef<str>> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vars: &'a [S],
    allow_imaginary: bool,
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn offset(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(Error::Syntax { offset: at, message: "division by zero".into() });
                    }
                    acc = acc.checked_div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ScalarExpr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                Tok::Int(n) => {
                    let exp: u32 = n.try_into().map_err(|_| Error::Syntax {
                        offset: self.toks[self.at.saturating_sub(1)].0,
                        message: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(exp));
                }
                _ => {
                    self.at = self.at.saturating_sub(1);
                    return self.syntax("expected a nonnegative integer exponent");
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<ScalarExpr> {
        let n = self.vars.len();
        let offset = self.offset();
        match self.bump() {
            Tok::Int(v) => Ok(ScalarExpr::constant(GaussianRational::real(BigRational::from_integer(v)), n)),
            Tok::Ident(name) if name == "i" => {
                if self.allow_imaginary {
                    Ok(ScalarExpr::imaginary_unit(n))
                } else {
                    Err(Error::ImaginaryOnRealChart)
                }
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| v.as_ref() == name) {
                Some(idx) => Ok(ScalarExpr::var(idx, n)),
                None => Err(Error::UnknownVariable { name, offset }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => {
                self.at = self.toks.len() - 1;
                self.syntax("unexpected end of input")
            }
            other => {
                self.at = self.at.saturating_sub(1);
                self.syntax(format!("unexpected token {other:?}"))
            }
        }
    }
}

/// Parses `text` over the ordered variable list `vars` into canonical form.
///
/// `i` always denotes the imaginary unit; rejecting it on real charts is the
/// chart's job.
pub fn parse_expr<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<ScalarExpr> {
    parse_with(text, vars, true)
}

pub(crate) fn parse_with<S: AsRef<str>>(text: &str, vars: &[S], allow_imaginary: bool) -> Result<ScalarExpr> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, vars, allow_imaginary };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn polynomial_input() {
        let e = parse_expr("x^2*y - 1", &XY).unwrap();
        assert!(e.is_polynomial());
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(e.render(&names), "x^2*y - 1");
    }

    #[test]
    fn cancellation_on_parse() {
        let e = parse_expr("(x^2-1)/(x-1)", &XY).unwrap();
        assert_eq!(e, parse_expr("x + 1", &XY).unwrap());
    }

    #[test]
    fn imaginary_unit() {
        assert_eq!(parse_expr("i*i", &XY).unwrap(), ScalarExpr::int(-1, 2));
    }

    #[test]
    fn unary_minus_binds_to_factor() {
        assert_eq!(parse_expr("-x^2", &XY).unwrap(), -parse_expr("x*x", &XY).unwrap());
        assert_eq!(parse_expr("2*-y", &XY).unwrap(), parse_expr("-2*y", &XY).unwrap());
    }

    #[test]
    fn syntax_error_reports_offset() {
        match parse_expr("x+*y", &XY) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(parse_expr("x^-1", &XY), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("(x", &XY), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("x $", &XY), Err(Error::Syntax { offset: 2, .. })));
    }

    #[test]
    fn unknown_variable() {
        assert!(matches!(parse_expr("x + z", &XY), Err(Error::UnknownVariable { ref name, offset: 4 }) if name == "z"));
    }

    #[test]
    fn division_by_syntactic_zero() {
        assert!(matches!(parse_expr("x/(y-y)", &XY), Err(Error::Syntax { offset: 2, .. })));
    }
}
