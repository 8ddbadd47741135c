//! Parser for the restricted coefficient-expression grammar.
//!
//! Expressions are built from rational literals (`7`, `3/4`), declared
//! parameter symbols, `+ - * ^` with non-negative integer exponents, unary
//! minus, and parentheses. There is no division operator: `/` is only legal
//! between two integer literals, where it forms a rational constant. This is
//! the same grammar the polynomial `Display` impls print, so values
//! round-trip.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{MPoly, ParamList};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("unexpected character `{ch}` at offset {at}")]
    BadChar { ch: char, at: usize },
    #[error("unknown symbol `{name}` at offset {at}")]
    UnknownSymbol { name: String, at: usize },
    #[error("expected {expected} at offset {at}")]
    Expected { expected: &'static str, at: usize },
    #[error("exponent must be a non-negative integer literal at offset {at}")]
    BadExponent { at: usize },
    #[error("zero denominator in rational literal at offset {at}")]
    ZeroDenominator { at: usize },
    #[error("trailing input at offset {at}")]
    Trailing { at: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, GrammarError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => { out.push((Tok::Plus, i)); i += 1 }
            '-' => { out.push((Tok::Minus, i)); i += 1 }
            '*' => { out.push((Tok::Star, i)); i += 1 }
            '^' => { out.push((Tok::Caret, i)); i += 1 }
            '/' => { out.push((Tok::Slash, i)); i += 1 }
            '(' => { out.push((Tok::LParen, i)); i += 1 }
            ')' => { out.push((Tok::RParen, i)); i += 1 }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digit run");
                out.push((Tok::Int(n), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Sym(src[start..i].to_string()), start));
            }
            _ => return Err(GrammarError::BadChar { ch: c, at: i }),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    params: &'a ParamList,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(_, a)| *a).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<MPoly, GrammarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> Result<MPoly, GrammarError> {
        let mut acc = self.unary()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<MPoly, GrammarError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    // power := primary ('^' INT)?
    fn power(&mut self) -> Result<MPoly, GrammarError> {
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let at = self.at();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(&n).map_err(|_| GrammarError::BadExponent { at })?;
                    Ok(base.pow(e))
                }
                _ => Err(GrammarError::BadExponent { at }),
            }
        } else {
            Ok(base)
        }
    }

    // primary := INT ('/' INT)? | SYMBOL | '(' expr ')'
    fn primary(&mut self) -> Result<MPoly, GrammarError> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let dat = self.at();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(GrammarError::ZeroDenominator { at: dat });
                            }
                            Ok(MPoly::constant(self.params.clone(), Rational::new(n, d)))
                        }
                        _ => Err(GrammarError::Expected { expected: "integer denominator", at: dat }),
                    }
                } else {
                    Ok(MPoly::constant(self.params.clone(), Rational::from_integer(n)))
                }
            }
            Some(Tok::Sym(name)) => MPoly::var(self.params.clone(), &name)
                .ok_or(GrammarError::UnknownSymbol { name, at }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let at = self.at();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(GrammarError::Expected { expected: "`)`", at }),
                }
            }
            _ => Err(GrammarError::Expected { expected: "literal, symbol or `(`", at }),
        }
    }
}

/// Parses an expression in the restricted grammar over the given parameters.
pub fn parse_expr(src: &str, params: &ParamList) -> Result<MPoly, GrammarError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, params, end: src.len() };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        if matches!(p.peek(), Some(Tok::Slash)) {
            return Err(GrammarError::Expected {
                expected: "`/` only between integer literals",
                at: p.at(),
            });
        }
        return Err(GrammarError::Trailing { at: p.at() });
    }
    Ok(poly)
}
