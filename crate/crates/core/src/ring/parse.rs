//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power ('*' power)*
//! power  := atom ('^' nat)?
//! atom   := nat | ident | '@' | '(' expr ')'
//! ```
//!
//! `@` is the primitive element of an extension field. A parenthesized
//! expression in `@` alone is the field literal form used by the serializer.

use std::fmt;

use thiserror::Error;

use super::{Polynomial, Ring};

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownGenerator(String),
    BadCoefficient(String),
}

/// Parse failure with a 0-based byte offset into the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let col = self.offset + 1;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at column {col}: {msg}"),
            ParseErrorKind::UnknownGenerator(name) => write!(f, "unknown generator `{name}` at column {col}"),
            ParseErrorKind::BadCoefficient(msg) => write!(f, "bad coefficient at column {col}: {msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    At,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::At => write!(f, "`@`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn syntax(offset: usize, msg: impl Into<String>) -> ParseError {
    ParseError { kind: ParseErrorKind::Syntax(msg.into()), offset }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'@' => Tok::At,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<u64>().map_err(|_| ParseError {
                    kind: ParseErrorKind::BadCoefficient(format!("integer `{}` too large", &text[start..i])),
                    offset: start,
                })?;
                if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                    return Err(syntax(start, "identifiers cannot start with a digit"));
                }
                toks.push((Tok::Num(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        toks.push((tok, start));
        i += 1;
    }
    toks.push((Tok::End, text.len()));
    Ok(toks)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser<'_> {
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

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let ring = self.ring;
        let mut negate = false;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { ring.neg(&first) } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = ring.add(&acc, &t);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.power()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (Tok::Num(n), off) => {
                if n > MAX_EXPONENT as u64 {
                    return Err(syntax(off, format!("exponent {n} exceeds {MAX_EXPONENT}")));
                }
                Ok(self.ring.pow(&base, n as u32))
            }
            (tok, off) => Err(syntax(off, format!("expected exponent after `^`, found {tok}"))),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let ring = self.ring;
        match self.bump() {
            (Tok::Num(n), _) => {
                let c = ring.field().coeff_from_int((n % ring.field().characteristic() as u64) as i64);
                Ok(ring.constant(c))
            }
            (Tok::Ident(name), off) => match ring.gens().index_of(&name) {
                Some(i) => Ok(ring.var(i)),
                None => Err(ParseError { kind: ParseErrorKind::UnknownGenerator(name), offset: off }),
            },
            (Tok::At, off) => {
                if ring.field().is_prime_field() {
                    return Err(ParseError {
                        kind: ParseErrorKind::BadCoefficient(format!("`@` is not defined over {}", ring.field())),
                        offset: off,
                    });
                }
                Ok(ring.constant(ring.field().generator_coeff()))
            }
            (Tok::LParen, _) => {
                let inner = self.expr()?;
                match self.bump() {
                    (Tok::RParen, _) => Ok(inner),
                    (tok, off) => Err(syntax(off, format!("expected `)`, found {tok}"))),
                }
            }
            (tok, off) => Err(syntax(off, format!("expected a number, generator, `@` or `(`, found {tok}"))),
        }
    }
}

pub(super) fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { ring, toks, pos: 0 };
    let poly = parser.expr()?;
    match parser.peek() {
        Tok::End => Ok(poly),
        tok => Err(syntax(parser.offset(), format!("unexpected {tok}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ring::GeneratorSet;

    fn ring(field: FieldSpec) -> Ring {
        let gens = GeneratorSet::from_pairs(&[("z", 1), ("y", 1), ("x", 1), ("w", 2), ("v", 2)]).unwrap();
        Ring::new(field, gens)
    }

    #[test]
    fn parses_relations() {
        let r = ring(FieldSpec::prime(2).unwrap());
        assert_eq!(r.parse("z*v + x*w").unwrap().len(), 2);
        assert!(r.parse("0").unwrap().is_zero());
        let long = r.parse("z^4 + z^2*w + z*x^3 + z*x*v + x^4 + x^2*v + w^2 + w*v + v^2").unwrap();
        assert_eq!(long.len(), 9);
        assert_eq!(r.homogeneous_degree(&long), Some(4));
    }

    #[test]
    fn subtraction_and_grouping() {
        let r = ring(FieldSpec::prime(3).unwrap());
        let f = r.parse("-(z - y)^2 + 4*z^2").unwrap();
        // -(z^2 - 2zy + y^2) + z^2 = 2zy - y^2 = 2*z*y + 2*y^2 over F_3
        assert_eq!(f, r.parse("2*z*y + 2*y^2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(FieldSpec::prime(2).unwrap());
        let e = r.parse("z*v + a").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownGenerator("a".into()));
        assert_eq!(e.offset, 6);
        let e = r.parse("z*v +").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.offset, 5);
        let e = r.parse("z v").unwrap_err();
        assert_eq!(e.offset, 2);
        let e = r.parse("@*z").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::BadCoefficient(_)));
        assert!(r.parse("z % y").is_err());
        assert!(r.parse("2z").is_err());
    }

    #[test]
    fn extension_literals() {
        let r = ring(FieldSpec::new(2, 2, None).unwrap());
        let f = r.parse("(@+1)*z + @^2*z").unwrap();
        // @^2 = @+1, so the sum vanishes
        assert!(f.is_zero());
    }
}
