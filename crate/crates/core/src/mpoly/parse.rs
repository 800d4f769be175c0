//! Recursive-descent parser for the polynomial expression grammar.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := '-' factor | atom ('^' uint)?
//! atom     := 'x' uint | 'z' | rational | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! `^` binds tighter than unary minus, which binds tighter than `*`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::exactalg::Rational;

const MAX_POLY_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    X,
    Z,
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(text: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            src: text.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        loop {
            while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_whitespace() {
                lx.pos += 1;
            }
            let start = lx.pos;
            let Some(&b) = lx.src.get(lx.pos) else {
                out.push((Tok::End, start));
                return Ok(out);
            };
            let tok = match b {
                b'x' => Tok::X,
                b'z' => Tok::Z,
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'0'..=b'9' => {
                    let mut end = lx.pos;
                    while end < lx.src.len() && lx.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    let digits = std::str::from_utf8(&lx.src[lx.pos..end]).expect("ascii digits");
                    let v: BigInt = digits.parse().expect("digits parse");
                    lx.pos = end;
                    out.push((Tok::Int(v), start));
                    continue;
                }
                _ => {
                    let ch = text[start..].chars().next().unwrap_or('?');
                    return Err(Error::Syntax {
                        offset: start,
                        message: format!("unexpected character {ch:?}"),
                    });
                }
            };
            lx.pos += 1;
            out.push((tok, start));
        }
    }
}

struct Parser<'r> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'r PolyRing,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

impl<'r> Parser<'r> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.factor()?);
        }
        let is_z = *self.peek() == Tok::Z;
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, off) = self.bump();
        let Tok::Int(e) = tok else {
            return Err(syntax(off, "expected an unsigned integer exponent"));
        };
        if is_z {
            // reduce the exponent modulo N before building zeta^e
            let n = BigInt::from(self.ring.field().order());
            let k = (e % n).to_i64().expect("reduced exponent fits");
            return Ok(self.ring.constant(self.ring.field().zeta_pow(k)));
        }
        let e = e
            .to_u64()
            .filter(|&v| v <= MAX_POLY_EXPONENT)
            .ok_or_else(|| syntax(off, format!("exponent exceeds {MAX_POLY_EXPONENT}")))?;
        Ok(base.pow(e as u32))
    }

    fn atom(&mut self) -> Result<Poly> {
        let (tok, off) = self.bump();
        match tok {
            Tok::X => {
                let (t, ioff) = self.bump();
                let Tok::Int(k) = t else {
                    return Err(syntax(ioff, "expected a variable index after `x`"));
                };
                let nv = self.ring.num_vars();
                match k.to_usize() {
                    Some(i) if i < nv => self.ring.var(i),
                    _ => Err(Error::VariableOutOfRange {
                        index: k.to_usize().unwrap_or(usize::MAX),
                        num_vars: nv,
                    }),
                }
            }
            Tok::Z => {
                if self.ring.field().order() == 1 {
                    return Err(Error::NoRootOfUnity);
                }
                Ok(self.ring.constant(self.ring.field().zeta()))
            }
            Tok::Int(num) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let (t, doff) = self.bump();
                    let Tok::Int(den) = t else {
                        return Err(syntax(doff, "expected a denominator"));
                    };
                    if den.is_zero() {
                        return Err(syntax(doff, "zero denominator"));
                    }
                    let r = Rational::new(num, den);
                    return Ok(self.ring.constant(self.ring.field().from_rational(&r)));
                }
                Ok(self.ring.constant(self.ring.field().from_bigint(num)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let (t, coff) = self.bump();
                if t != Tok::RParen {
                    return Err(syntax(coff, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(syntax(off, "unexpected end of input")),
            other => Err(syntax(off, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse_poly(text: &str, ring: &PolyRing) -> Result<Poly> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, pos: 0, ring };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(out)
}
