//! Parser for polynomial expressions such as `a^3*v1 - 2 t1^2 + (1/3)*s*(s + a1)`.
//!
//! Juxtaposition multiplies, so `2t1` and `2*t1` are the same.

use num_bigint::BigInt;

use super::poly::PolyElement;
use crate::error::{Error, Result};
use crate::exact::scalar::Coeff;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let err = |m: String| Error::Parse {
        input: s.to_string(),
        message: m,
    };
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = chars[start..i].iter().collect();
                out.push(Tok::Num(t.parse().expect("digits")));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            c => return Err(err(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [String],
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, m: impl Into<String>) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            message: m.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr<R: Coeff>(&mut self) -> Result<PolyElement<R>> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term::<R>()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<R: Coeff>(&mut self) -> Result<PolyElement<R>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let Some(Tok::Num(d)) = self.next() else {
                        return Err(self.err("expected an integer after '/'"));
                    };
                    let inv = R::one()
                        .try_div(&R::from_int(&d))
                        .ok_or_else(|| self.err(format!("{d} is not invertible in the coefficient ring")))?;
                    acc = acc.scale(&inv);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power<R: Coeff>(&mut self) -> Result<PolyElement<R>> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.next() else {
                return Err(self.err("expected an integer exponent"));
            };
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<R: Coeff>(&mut self) -> Result<PolyElement<R>> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(PolyElement::constant(R::from_int(&n))),
            Some(Tok::Ident(name)) => {
                let i = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(Error::UnknownGenerator(name))?;
                Ok(PolyElement::var(i))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(self.err("unbalanced parenthesis"));
                }
                Ok(e)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `s` as a polynomial in the named generators.
pub fn parse_poly<R: Coeff>(s: &str, names: &[String]) -> Result<PolyElement<R>> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        input: s,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::TwoLocal;

    fn names() -> Vec<String> {
        ["a", "u", "v1", "t1"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_monomials() {
        let p: PolyElement<BigInt> = parse_poly("a^3*v1", &names()).unwrap();
        assert_eq!(p.fmt_with(&names()), "a^3*v1");
        let q: PolyElement<BigInt> = parse_poly("u - a^2 t1", &names()).unwrap();
        assert_eq!(q.num_terms(), 2);
        let r: PolyElement<BigInt> = parse_poly("-(2t1)^2 + 4*t1^2", &names()).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn fractions_need_units() {
        let p: PolyElement<TwoLocal> = parse_poly("u/3", &names()).unwrap();
        assert_eq!(p.fmt_with(&names()), "1/3*u");
        assert!(parse_poly::<TwoLocal>("u/2", &names()).is_err());
        assert!(parse_poly::<BigInt>("u/3", &names()).is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly::<BigInt>("x", &names()), Err(Error::UnknownGenerator(_))));
        assert!(parse_poly::<BigInt>("(a", &names()).is_err());
        assert!(parse_poly::<BigInt>("a^", &names()).is_err());
    }
}
