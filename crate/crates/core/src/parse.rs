//! Hand-written cursor parser shared by the word, element and matrix
//! literal grammars.

use num_bigint::BigInt;
use thiserror::Error;

use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected a positive exponent after '^'")]
    ExpectedExponent,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("empty expression")]
    Empty,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("letter '{0}' is not in the alphabet of this presentation")]
    ForeignLetter(char),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

pub(crate) struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    pub(crate) fn position(&self) -> usize {
        self.pos
    }

    pub(crate) fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.pos, kind }
    }

    pub(crate) fn error_at(&self, position: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { position, kind }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => Err(self.error_here(ParseErrorKind::UnexpectedChar(d))),
            None => Err(self.error_here(ParseErrorKind::UnexpectedEnd)),
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error_here(ParseErrorKind::UnexpectedChar(c))),
        }
    }

    /// Raw digit run at the cursor (no whitespace skipping inside).
    fn digits(&mut self) -> &'a str {
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    /// True when the cursor sits on a standalone `1` used as the empty word.
    fn at_unit_word(&mut self) -> bool {
        if self.peek() != Some('1') {
            return false;
        }
        let after = &self.rest()[1..];
        !after.starts_with(|c: char| c.is_ascii_digit() || c == '/' || c == '^')
    }

    /// Parses juxtaposed word tokens. Returns `None` if no token was present.
    /// Letters outside `allowed` are rejected.
    pub(crate) fn word(&mut self, allowed: &[Letter]) -> Result<Option<Word>, ParseError> {
        let mut word = Word::one();
        let mut total: u64 = 0;
        let mut any = false;
        loop {
            if self.at_unit_word() {
                self.bump();
                any = true;
                continue;
            }
            let Some(c) = self.peek() else { break };
            let Some(letter) = Letter::from_symbol(c) else { break };
            let start = self.pos;
            if !allowed.contains(&letter) {
                return Err(self.error_here(ParseErrorKind::ForeignLetter(c)));
            }
            self.pos += 1;
            let mut exp: u32 = 1;
            if self.eat('^') {
                self.skip_ws();
                let at = self.pos;
                let ds = self.digits();
                if ds.is_empty() {
                    return Err(self.error_at(at, ParseErrorKind::ExpectedExponent));
                }
                exp = ds
                    .parse::<u32>()
                    .map_err(|_| self.error_at(at, ParseErrorKind::ExponentOverflow))?;
                if exp == 0 {
                    return Err(self.error_at(at, ParseErrorKind::ExpectedExponent));
                }
            }
            total += u64::from(exp);
            if total > u64::from(u32::MAX) {
                return Err(self.error_at(start, ParseErrorKind::ExponentOverflow));
            }
            word.push(letter, exp);
            any = true;
        }
        Ok(any.then_some(word))
    }

    /// Parses an integer or fraction `n` / `n/d` if one is present.
    pub(crate) fn number(&mut self) -> Result<Option<(BigInt, BigInt)>, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            _ => return Ok(None),
        }
        if self.at_unit_word() {
            return Ok(None);
        }
        let num: BigInt = self.digits().parse().expect("digit run");
        let mut den = BigInt::from(1);
        if self.eat('/') {
            self.skip_ws();
            let at = self.pos;
            let ds = self.digits();
            if ds.is_empty() {
                return Err(match self.peek() {
                    Some(c) => self.error_here(ParseErrorKind::UnexpectedChar(c)),
                    None => self.error_here(ParseErrorKind::UnexpectedEnd),
                });
            }
            den = ds.parse().expect("digit run");
            if den == BigInt::from(0) {
                return Err(self.error_at(at, ParseErrorKind::ZeroDenominator));
            }
        }
        Ok(Some((num, den)))
    }
}
