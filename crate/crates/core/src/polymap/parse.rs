//! Text form of polynomial maps.
//!
//! ```text
//! map    := expr (';' expr)*
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := number | 'x' index | '(' expr ')' | '-' atom
//! number := digits | digits '/' digits | digits '.' digits
//! ```
//!
//! Variables are `x1 .. xn`. Products and powers are expanded on the fly.

use crate::error::{Error, Result};
use crate::polymap::poly::{self, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Semi,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.pos - start
    }

    fn next(&mut self, n_in: usize) -> Result<(Tok, usize)> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = self.bytes.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let single = |t| Ok((t, start));
        match c {
            b'+' => {
                self.pos += 1;
                single(Tok::Plus)
            }
            b'-' => {
                self.pos += 1;
                single(Tok::Minus)
            }
            b'*' => {
                self.pos += 1;
                single(Tok::Star)
            }
            b'^' => {
                self.pos += 1;
                single(Tok::Caret)
            }
            b'(' => {
                self.pos += 1;
                single(Tok::LParen)
            }
            b')' => {
                self.pos += 1;
                single(Tok::RParen)
            }
            b';' => {
                self.pos += 1;
                single(Tok::Semi)
            }
            b'0'..=b'9' | b'.' => {
                self.digits();
                let next = self.bytes.get(self.pos).copied();
                let fraction = next == Some(b'/')
                    && self.bytes.get(self.pos + 1).is_some_and(u8::is_ascii_digit);
                if next == Some(b'.') || fraction {
                    self.pos += 1;
                    self.digits();
                }
                Ok((Tok::Num(self.src[start..self.pos].to_string()), start))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let index = name
                    .strip_prefix('x')
                    .filter(|d| {
                        !d.is_empty()
                            && d.bytes().all(|b| b.is_ascii_digit())
                            && !d.starts_with('0')
                    })
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::UnknownVariable {
                        name: name.to_string(),
                        position: start,
                    })?;
                if index > n_in {
                    return Err(Error::ArityExceeded {
                        index,
                        arity: n_in,
                        position: start,
                    });
                }
                Ok((Tok::Var(index - 1), start))
            }
            _ => {
                let ch = self.src[start..].chars().next().unwrap_or('?');
                Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                })
            }
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    n_in: usize,
    tok: Tok,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, n_in: usize) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let (tok, pos) = lexer.next(n_in)?;
        Ok(Parser {
            lexer,
            n_in,
            tok,
            pos,
        })
    }

    fn bump(&mut self) -> Result<()> {
        let (tok, pos) = self.lexer.next(self.n_in)?;
        self.tok = tok;
        self.pos = pos;
        Ok(())
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn expr<S: Scalar>(&mut self) -> Result<Poly<S>> {
        let mut acc = poly::zero();
        let mut negate = false;
        if self.tok == Tok::Minus {
            negate = true;
            self.bump()?;
        } else if self.tok == Tok::Plus {
            self.bump()?;
        }
        loop {
            let t = self.term::<S>()?;
            acc = if negate {
                poly::sub(&acc, &t)
            } else {
                poly::add(&acc, &t)
            };
            match self.tok {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => return Ok(acc),
            }
            self.bump()?;
        }
    }

    fn term<S: Scalar>(&mut self) -> Result<Poly<S>> {
        let mut acc = self.factor::<S>()?;
        while self.tok == Tok::Star {
            self.bump()?;
            let f = self.factor::<S>()?;
            acc = poly::mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor<S: Scalar>(&mut self) -> Result<Poly<S>> {
        let base = self.atom::<S>()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        let Tok::Num(text) = &self.tok else {
            return self.fail("expected an integer exponent");
        };
        let exp: u32 = match text.parse() {
            Ok(e) => e,
            Err(_) => return self.fail(format!("bad exponent `{text}`")),
        };
        self.bump()?;
        Ok(poly::pow(&base, exp, self.n_in))
    }

    fn atom<S: Scalar>(&mut self) -> Result<Poly<S>> {
        match self.tok.clone() {
            Tok::Num(text) => {
                let Some(value) = S::parse_literal(&text) else {
                    return self.fail(format!("bad number `{text}`"));
                };
                self.bump()?;
                Ok(poly::constant(self.n_in, value))
            }
            Tok::Var(i) => {
                self.bump()?;
                Ok(poly::variable(self.n_in, i))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr::<S>()?;
                if self.tok != Tok::RParen {
                    return self.fail("expected `)`");
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::Minus => {
                self.bump()?;
                Ok(poly::neg(&self.atom::<S>()?))
            }
            Tok::End | Tok::Semi => self.fail("unexpected end of expression"),
            other => self.fail(format!("unexpected token {other:?}")),
        }
    }
}

/// Components of a `;`-separated map over `n_in` variables.
pub(crate) fn parse_components<S: Scalar>(text: &str, n_in: usize) -> Result<Vec<Poly<S>>> {
    let mut parser = Parser::new(text, n_in)?;
    let mut components = vec![parser.expr::<S>()?];
    loop {
        match parser.tok {
            Tok::End => return Ok(components),
            Tok::Semi => {
                parser.bump()?;
                components.push(parser.expr::<S>()?);
            }
            _ => return parser.fail("expected `+`, `-`, `*`, `;` or end of input"),
        }
    }
}

/// Largest `k` such that `xk` appears in `text` (0 if none).
pub fn max_variable_index(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        let boundary = i == 0 || !(bytes[i - 1].is_ascii_alphanumeric() || bytes[i - 1] == b'_');
        if bytes[i] == b'x' && boundary {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > start {
                if let Ok(k) = text[start..j].parse::<usize>() {
                    best = best.max(k);
                }
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}
