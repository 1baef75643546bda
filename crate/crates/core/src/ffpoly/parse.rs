//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (EBNF, whitespace-insensitive):
//!
//! ```text
//! expr   := term { ("+" | "-") term }
//! term   := unary { "*" unary }
//! unary  := "-" unary | factor
//! factor := atom [ "^" integer ]
//! atom   := identifier | integer | "(" expr ")"
//! ```
//!
//! Precedence: `^` > `*` > unary `-` > binary `+`/`-`. Exponents are
//! nonnegative integers; identifiers must be declared variable names.

use super::{ExponentVector, Polynomial, PrimeModulus};
use crate::error::Error;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<Spanned, Error> {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        let mk = |tok| Spanned { tok, line, col };
        let c = match self.peek() {
            None => return Ok(mk(Tok::Eof)),
            Some(c) => c,
        };
        let tok = match c {
            b'+' => {
                self.bump();
                Tok::Plus
            }
            b'-' => {
                self.bump();
                Tok::Minus
            }
            b'*' => {
                self.bump();
                Tok::Star
            }
            b'^' => {
                self.bump();
                Tok::Caret
            }
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b'0'..=b'9' => {
                let mut v: u64 = 0;
                while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                    let d = self.bump().unwrap() - b'0';
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as u64))
                        .ok_or(Error::ExponentOverflow { line, col })?;
                }
                Tok::Int(v)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut s = String::new();
                while matches!(self.peek(), Some(d) if d.is_ascii_alphanumeric() || d == b'_') {
                    s.push(self.bump().unwrap() as char);
                }
                Tok::Ident(s)
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok(mk(tok))
    }
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    idx: usize,
    modulus: PrimeModulus,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.idx]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.idx].clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = acc.mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, Error> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Polynomial, Error> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let t = self.bump();
            match t.tok {
                Tok::Int(e) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::ExponentOverflow { line: t.line, col: t.col })?;
                    // Cap so repeated squaring cannot silently wrap.
                    if e > 1 << 24 {
                        return Err(Error::ExponentOverflow { line: t.line, col: t.col });
                    }
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse {
                    line: t.line,
                    col: t.col,
                    msg: "expected integer exponent after `^`".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, Error> {
        let t = self.bump();
        match t.tok {
            Tok::Int(v) => Ok(Polynomial::constant(
                self.modulus,
                self.names.len(),
                (v % self.modulus.p() as u64) as i64,
            )),
            Tok::Ident(name) => {
                let var = self
                    .names
                    .iter()
                    .position(|n| n == &name)
                    .ok_or(Error::UnknownIdentifier { name, line: t.line, col: t.col })?;
                Ok(Polynomial::monomial(
                    self.modulus,
                    ExponentVector::unit(self.names.len(), var),
                    1,
                ))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let t = self.bump();
                if t.tok != Tok::RParen {
                    return Err(Error::Parse {
                        line: t.line,
                        col: t.col,
                        msg: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            other => Err(Error::Parse {
                line: t.line,
                col: t.col,
                msg: format!("unexpected token {:?}", other),
            }),
        }
    }
}

/// Parses an expression into a canonical [`Polynomial`] over `F_p` in
/// the variables `names`.
pub fn parse_polynomial(
    text: &str,
    modulus: PrimeModulus,
    names: &[String],
) -> Result<Polynomial, Error> {
    let mut lexer = Lexer::new(text);
    let mut toks = Vec::new();
    loop {
        let t = lexer.next_token()?;
        let eof = t.tok == Tok::Eof;
        toks.push(t);
        if eof {
            break;
        }
    }
    let mut parser = Parser { toks, idx: 0, modulus, names };
    let poly = parser.expr()?;
    let t = parser.peek();
    if t.tok != Tok::Eof {
        return Err(Error::Parse {
            line: t.line,
            col: t.col,
            msg: format!("trailing input {:?}", t.tok),
        });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn basic_sum_of_squares() {
        let p = PrimeModulus::new(5).unwrap();
        let f = parse_polynomial("x^2+y^2", p, &names(&["x", "y"])).unwrap();
        let expect = Polynomial::from_terms(p, 2, vec![(ev(&[2, 0]), 1), (ev(&[0, 2]), 1)]);
        assert_eq!(f, expect);
    }

    #[test]
    fn coefficient_reduction() {
        // "3*x*y - y" at p=3 -> 2y
        let p = PrimeModulus::new(3).unwrap();
        let f = parse_polynomial("3*x*y - y", p, &names(&["x", "y"])).unwrap();
        let expect = Polynomial::from_terms(p, 2, vec![(ev(&[0, 1]), 2)]);
        assert_eq!(f, expect);
    }

    #[test]
    fn exact_cancellation() {
        let p = PrimeModulus::new(7).unwrap();
        let f = parse_polynomial("x^2 - x^2", p, &names(&["x"])).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn whitespace_insensitive_and_parens() {
        let p = PrimeModulus::new(5).unwrap();
        let ns = names(&["x", "y"]);
        let a = parse_polynomial("( x + y ) ^ 2", p, &ns).unwrap();
        let b = parse_polynomial("(x+y)^2", p, &ns).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unary_minus_binds_below_power() {
        let p = PrimeModulus::new(5).unwrap();
        let ns = names(&["x"]);
        let a = parse_polynomial("-x^2", p, &ns).unwrap();
        let b = parse_polynomial("4*x^2", p, &ns).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn error_positions() {
        let p = PrimeModulus::new(5).unwrap();
        let ns = names(&["x"]);
        match parse_polynomial("x + zz", p, &ns) {
            Err(Error::UnknownIdentifier { name, col, .. }) => {
                assert_eq!(name, "zz");
                assert_eq!(col, 5);
            }
            other => panic!("expected unknown identifier, got {:?}", other),
        }
        assert!(parse_polynomial("x +", p, &ns).is_err());
        assert!(parse_polynomial("x ^ 99999999999999999999", p, &ns).is_err());
    }

    #[test]
    fn print_parse_roundtrip() {
        let p = PrimeModulus::new(5).unwrap();
        let ns = names(&["x", "y", "z"]);
        let f = parse_polynomial("2*x^3*z + 4*y - 1", p, &ns).unwrap();
        let g = parse_polynomial(&f.to_expression(&ns), p, &ns).unwrap();
        assert_eq!(f, g);
    }
}
