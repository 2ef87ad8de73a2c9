//! Polynomial text syntax.
//!
//! Variables are `x1..xd` (aliases `x`, `y`, `z` for `x1`, `x2`, `x3`),
//! operators `+ - * / ^`, nonnegative integer exponents, integer or `a/b`
//! literals and parentheses. Whitespace is ignored, juxtaposition
//! multiplies (`2x1`, `(x+1)(x-1)`), and `/` only divides by a nonzero
//! constant.

use num_bigint::BigInt;
use num_traits::Zero;

use super::mpoly::MPoly;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Rational;

const MAX_EXPONENT: u32 = 4096;

/// Names accepted for the single variable of a univariate polynomial.
pub const UNIVARIATE_NAMES: [&str; 7] = ["t", "x", "x1", "u", "s", "z", "y"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            i += 1;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { offset: i, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    arity: usize,
    var_of: &'a dyn Fn(&str) -> Option<usize>,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let offset = self.toks.get(self.pos).map_or(self.end, |t| t.0);
        Err(Error::Parse { offset, message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn peek_op(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Op(c))
    }

    fn expr(&mut self) -> Result<MPoly<Rational>> {
        let mut acc = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = &acc + &self.term()?;
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<MPoly<Rational>> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                acc = &acc * &self.unary()?;
            } else if self.peek_op('/') {
                self.pos += 1;
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return self.err("division is only allowed by a nonzero constant");
                }
                acc = acc.scale(&d.constant_term().recip());
            } else if self.starts_atom() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly<Rational>> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek_op('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly<Rational>> {
        let base = self.atom()?;
        if self.peek_op('^') {
            self.pos += 1;
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return self.err("exponent must be a nonnegative integer");
            };
            let e: u32 = match u32::try_from(&n) {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return self.err(format!("exponent exceeds {MAX_EXPONENT}")),
            };
            self.pos += 1;
            return Ok(base.pow(e as usize));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly<Rational>> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(self.arity, Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => match (self.var_of)(&name) {
                Some(v) => {
                    self.pos += 1;
                    Ok(MPoly::var(self.arity, v))
                }
                None => self.err(format!("unknown variable '{name}'")),
            },
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.peek_op(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn run(s: &str, arity: usize, var_of: &dyn Fn(&str) -> Option<usize>) -> Result<MPoly<Rational>> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, end: s.len(), arity, var_of };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Index (0-based) of a multivariate variable name.
fn multivariate_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => {
            let digits = name.strip_prefix('x')?;
            let k: usize = digits.parse().ok()?;
            (k >= 1 && !digits.starts_with('0')).then(|| k - 1)
        }
    }
}

/// Parses a multivariate polynomial; the arity is the largest variable index
/// used (at least 1).
pub fn parse_mpoly(s: &str) -> Result<MPoly<Rational>> {
    let toks = lex(s)?;
    let mut arity = 1;
    for (off, t) in &toks {
        if let Tok::Ident(name) = t {
            match multivariate_index(name) {
                Some(v) => arity = arity.max(v + 1),
                None => {
                    return Err(Error::Parse { offset: *off, message: format!("unknown variable '{name}'") })
                }
            }
        }
    }
    run(s, arity, &multivariate_index)
}

/// Parses a multivariate polynomial in exactly `arity` variables.
pub fn parse_mpoly_arity(s: &str, arity: usize) -> Result<MPoly<Rational>> {
    let p = parse_mpoly(s)?;
    if p.arity() > arity {
        return Err(Error::Parse {
            offset: 0,
            message: format!("uses x{} but only {arity} variables are allowed", p.arity()),
        });
    }
    Ok(p.with_arity(arity))
}

/// Parses a univariate polynomial in one variable named as in
/// [`UNIVARIATE_NAMES`].
pub fn parse_upoly(s: &str) -> Result<Poly<Rational>> {
    let toks = lex(s)?;
    let mut name: Option<&str> = None;
    for (off, t) in &toks {
        if let Tok::Ident(n) = t {
            if !UNIVARIATE_NAMES.contains(&n.as_str()) {
                return Err(Error::Parse { offset: *off, message: format!("unknown variable '{n}'") });
            }
            match name {
                Some(m) if m != n => {
                    return Err(Error::Parse {
                        offset: *off,
                        message: format!("univariate input mixes '{m}' and '{n}'"),
                    })
                }
                _ => name = Some(n),
            }
        }
    }
    let p = run(s, 1, &|n| UNIVARIATE_NAMES.contains(&n).then_some(0))?;
    Ok(p.to_uni(0).expect("single variable"))
}

/// Parses a constant expression such as `-3/4` or `2^10`.
pub fn parse_constant(s: &str) -> Result<Rational> {
    let p = run(s, 1, &|_| None)?;
    debug_assert!(p.is_constant());
    Ok(if p.is_zero() { Rational::zero() } else { p.constant_term() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn parses_aliases_and_indices() {
        let p = parse_mpoly("x + y^2").unwrap();
        assert_eq!(p.arity(), 2);
        assert_eq!(p, parse_mpoly("x1+x2 ^ 2").unwrap());
        let q = parse_mpoly("x1 + x2 + x3^2").unwrap();
        assert_eq!(q.arity(), 3);
        assert_eq!(parse_mpoly("x4").unwrap().arity(), 4);
    }

    #[test]
    fn rationals_and_division() {
        let p = parse_mpoly("1/2*x - 3/4").unwrap();
        assert_eq!(p.coeff(&[1]), rat(1, 2));
        assert_eq!(p.constant_term(), rat(-3, 4));
        assert_eq!(parse_mpoly("(x^2+2x)/2").unwrap(), parse_mpoly("1/2x^2 + x").unwrap());
        assert!(parse_mpoly("1/x").is_err());
        assert!(parse_mpoly("1/0").is_err());
        assert_eq!(parse_constant("-3/4").unwrap(), rat(-3, 4));
    }

    #[test]
    fn implicit_multiplication() {
        assert_eq!(parse_mpoly("(x+1)(x-1)").unwrap(), parse_mpoly("x^2-1").unwrap());
        assert_eq!(parse_mpoly("2x1x2").unwrap(), parse_mpoly("2*x1*x2").unwrap());
    }

    #[test]
    fn univariate() {
        let p = parse_upoly("t^3 - 2t + 1/3").unwrap();
        assert_eq!(p.coeffs(), &[rat(1, 3), int(-2), int(0), int(1)]);
        assert!(parse_upoly("t + s").is_err());
        assert_eq!(parse_upoly("7").unwrap(), Poly::constant(int(7)));
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_mpoly("x + $") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_mpoly("x^-1").is_err());
        assert!(parse_mpoly("x^1/2").is_ok());
        assert!(parse_mpoly("(x").is_err());
        assert!(parse_mpoly("").is_err());
        assert!(parse_mpoly("w").is_err());
        assert!(parse_mpoly("x0").is_err());
    }
}
