//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor (("*" factor) | factor)*     juxtaposition composes
//! factor   := atom ("^" uint)?
//! atom     := "1" | "I" | "E" | "M" | "D" | rational | "(" expr ")"
//! rational := int ("/" uint)?
//! ```
//!
//! Whitespace between tokens is ignored. A sign directly in front of a
//! number in atom position belongs to the literal, so `-1*I + E` parses.

use std::fmt;

use crate::ops::{Generator, OperatorExpr};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Gen(Generator),
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
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Gen(g) => format!("`{}`", g.symbol()),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const ATOM: &[&str] = &["`1`", "`I`", "`E`", "`M`", "`D`", "rational", "`(`"];

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = match b {
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                out.push((start, Tok::Num(text[start..pos].to_string())));
                continue;
            }
            b'I' => Tok::Gen(Generator::Top),
            b'E' => Tok::Gen(Generator::Bottom),
            b'M' => Tok::Gen(Generator::Middle),
            b'D' => Tok::Gen(Generator::Derivative),
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: start,
                    expected: ATOM.to_vec(),
                    found: format!("character `{ch}`"),
                });
            }
        };
        pos += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = OperatorExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = OperatorExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                }
                Tok::Num(_) | Tok::Gen(_) | Tok::LParen => {}
                _ => return Ok(lhs),
            }
            lhs = OperatorExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<OperatorExpr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp = self.uint("unsigned integer exponent")?;
        Ok(OperatorExpr::Pow(Box::new(base), exp))
    }

    fn uint(&mut self, what: &'static str) -> Result<i64, ParseError> {
        match self.peek().clone() {
            Tok::Num(digits) => {
                let v = digits.parse::<i64>().map_err(|_| ParseError {
                    offset: self.offset(),
                    expected: vec![what],
                    found: format!("oversized number `{digits}`"),
                })?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn atom(&mut self) -> Result<OperatorExpr, ParseError> {
        match self.peek().clone() {
            Tok::Gen(g) => {
                self.bump();
                Ok(OperatorExpr::Generator(g))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "`+`", "`-`", "`*`", "`^`"]));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Num(_) => self.rational(false),
            Tok::Minus if matches!(self.peek_at(1), Tok::Num(_)) => {
                self.bump();
                self.rational(true)
            }
            _ => Err(self.error(ATOM)),
        }
    }

    fn rational(&mut self, negative: bool) -> Result<OperatorExpr, ParseError> {
        let start = self.offset();
        let Tok::Num(numer) = self.bump() else {
            unreachable!("caller checked for a number")
        };
        let mut text = if negative { format!("-{numer}") } else { numer };
        if *self.peek() == Tok::Slash {
            self.bump();
            match self.peek().clone() {
                Tok::Num(d) => {
                    self.bump();
                    text = format!("{text}/{d}");
                }
                _ => return Err(self.error(&["unsigned integer denominator"])),
            }
        }
        let value: Rational = text.parse().map_err(|_| ParseError {
            offset: start,
            expected: vec!["nonzero denominator"],
            found: format!("`{text}`"),
        })?;
        Ok(OperatorExpr::Literal(value))
    }
}

/// Parse an operator expression such as `(E - I)^2` or `1/2*I + 1/2*E`.
pub fn parse_operator(text: &str) -> Result<OperatorExpr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["`+`", "`-`", "`*`", "`^`", "end of input"]));
    }
    Ok(e)
}
