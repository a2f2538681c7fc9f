//! Parser for the canonical text form of motivic classes.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | 'L' | '[' NAME ']' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::class::MotivicClass;
use super::ratfunc::RationalFunctionL;
use super::MringError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    L,
    Sym(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> MringError {
    MringError::Parse {
        pos,
        message: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, MringError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        match ch {
            c if c.is_whitespace() => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Int(s.parse().expect("digits"))));
            }
            'L' => {
                out.push((pos, Tok::L));
                i += 1;
            }
            '[' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].1 != ']' {
                    j += 1;
                }
                if j == chars.len() {
                    return Err(err(pos, "unterminated symbol"));
                }
                let name: String = chars[start..j].iter().map(|(_, c)| c).collect();
                let name = name.trim().to_string();
                if name.is_empty() {
                    return Err(err(pos, "empty symbol name"));
                }
                out.push((pos, Tok::Sym(name)));
                i = j + 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '-' | '−' => {
                out.push((pos, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((pos, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((pos, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            other => return Err(err(pos, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<MotivicClass, MringError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MotivicClass, MringError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.bump();
                    let rhs = self.unary()?;
                    let scalar = rhs
                        .as_scalar()
                        .ok_or_else(|| err(pos, "divisor must be free of curve symbols"))?;
                    let inv = scalar.inv().ok_or(MringError::DivisionByZero)?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MotivicClass, MringError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<MotivicClass, MringError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            let pos = self.pos();
            self.bump();
            let negative = if let Some(Tok::Minus) = self.peek() {
                self.bump();
                true
            } else {
                false
            };
            let k = match self.bump() {
                Some(Tok::Int(k)) => i64::try_from(k).map_err(|_| err(pos, "exponent too large"))?,
                _ => return Err(err(pos, "expected integer exponent")),
            };
            let k = if negative { -k } else { k };
            if k == 1 {
                return Ok(base);
            }
            let scalar = base
                .as_scalar()
                .ok_or_else(|| err(pos, "only symbol-free bases may be raised to a power"))?;
            let r = scalar.pow(k).ok_or(MringError::DivisionByZero)?;
            return Ok(MotivicClass::scalar(r));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MotivicClass, MringError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(MotivicClass::rational(n.into())),
            Some(Tok::L) => Ok(MotivicClass::scalar(RationalFunctionL::lpow(1))),
            Some(Tok::Sym(name)) => Ok(MotivicClass::curve(name)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(pos, "unbalanced parenthesis")),
                }
            }
            Some(t) => Err(err(pos, format!("unexpected token {t:?}"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

/// Parses the canonical text form (and any expression in the same grammar).
pub fn parse_class(text: &str) -> Result<MotivicClass, MringError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let value = p.expr()?;
    if p.at < p.toks.len() {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(value)
}
