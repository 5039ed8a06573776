//! Parser for scalar literals like `1/2 - z12^2 + 3*z12^3`.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' int)?
//! base   := nat | 'z' nat | '(' expr ')'
//! ```
//!
//! `zN` is a primitive N-th root of unity. The conductor of the result is the
//! smallest normalized conductor containing every root mentioned, so `z3 + z4`
//! lands in Q(ζ_12) and plain rationals land in Q.

use super::{lcm_conductor, CycloNum, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Num(BigInt),
    Zeta(u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            b'-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            b'*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            b'/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            b'^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            b'(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            b')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digits parse as BigInt");
                toks.push(Tok::Num(n));
            }
            b'z' => {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(Error::Parse(format!(
                        "expected digits after 'z' at byte {start} in {input:?}"
                    )));
                }
                let n: u32 = input[start..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("root order out of range in {input:?}")))?;
                if n == 0 {
                    return Err(Error::Parse(format!("z0 is not a root of unity in {input:?}")));
                }
                toks.push(Tok::Zeta(n));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character {:?} at byte {i} in {input:?}",
                    c as char
                )))
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    conductor: u32,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.input))
    }

    fn expr(&mut self) -> Result<CycloNum> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Tok::Minus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycloNum> {
        let mut acc = self.factor()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Star => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Tok::Slash => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let inv = rhs.inv()?;
                    acc = &acc * &inv;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CycloNum> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            let f = self.factor()?;
            return Ok(-&f);
        }
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                self.pos += 1;
                true
            } else {
                false
            };
            let Some(Tok::Num(n)) = self.bump().cloned() else {
                return Err(self.err("expected integer exponent after '^'"));
            };
            let e: i64 = n
                .try_into()
                .map_err(|_| Error::Parse(format!("exponent too large in {:?}", self.input)))?;
            return if neg {
                Ok(base.inv()?.pow(e))
            } else {
                Ok(base.pow(e))
            };
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<CycloNum> {
        match self.bump().cloned() {
            Some(Tok::Num(n)) => Ok(CycloNum::from_rational(
                self.conductor,
                Rational::from_integer(n),
            )),
            Some(Tok::Zeta(n)) => CycloNum::root_of_unity(self.conductor, n),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected number, zN, or '('")),
        }
    }
}

fn conductor_of_tokens(toks: &[Tok]) -> u32 {
    toks.iter().fold(1u32, |acc, t| match t {
        Tok::Zeta(n) => lcm_conductor(acc, *n),
        _ => acc,
    })
}

/// Parse a scalar; the result lives at the smallest conductor that holds it
/// syntactically (every root of unity mentioned, whether or not it cancels).
pub fn parse_scalar(input: &str) -> Result<CycloNum> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::Parse(format!("empty scalar in {input:?}")));
    }
    let conductor = conductor_of_tokens(&toks);
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        conductor,
        input,
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parse a scalar and lift it into Q(ζ_conductor).
pub fn parse_scalar_at(input: &str, conductor: u32) -> Result<CycloNum> {
    let v = parse_scalar(input)?;
    if conductor % v.conductor() != 0 {
        return Err(Error::Parse(format!(
            "{input:?} lives in Q(zeta_{}), which does not embed in Q(zeta_{conductor})",
            v.conductor()
        )));
    }
    Ok(v.lift(conductor))
}

/// Parse a comma separated vector, with optional surrounding brackets.
/// All entries are lifted to a common conductor.
pub fn parse_vector(input: &str) -> Result<Vec<CycloNum>> {
    let trimmed = input.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(trimmed);
    // Split on commas outside parentheses.
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced ')' in {input:?}")))?;
            }
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    let entries: Vec<CycloNum> = parts
        .iter()
        .map(|p| parse_scalar(p))
        .collect::<Result<_>>()?;
    if entries.is_empty() {
        return Err(Error::Parse(format!("empty vector in {input:?}")));
    }
    let conductor = entries
        .iter()
        .fold(1u32, |acc, e| lcm_conductor(acc, e.conductor()));
    Ok(entries.into_iter().map(|e| e.lift(conductor)).collect())
}
