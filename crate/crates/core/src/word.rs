//! Words over a two-letter alphabet, stored run-length encoded.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::parse::{ParseError, Parser};

/// A generator letter.
///
/// `X`/`Q` generate the algebra with the adjoined generalised inverse,
/// `A`/`B` generate the truncated free algebra used by the matrix model.
/// The derived order puts `B > A` and `Q > X`; letters from different
/// alphabets are never compared in practice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    X,
    Q,
}

impl Letter {
    pub fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::X => 'x',
            Letter::Q => 'q',
        }
    }

    pub fn from_symbol(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'x' => Some(Letter::X),
            'q' => Some(Letter::Q),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A maximal run `letter^exponent` inside a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub letter: Letter,
    pub exp: u32,
}

impl Block {
    pub fn new(letter: Letter, exp: u32) -> Self {
        Block { letter, exp }
    }
}

/// A monomial in two noncommuting letters.
///
/// Adjacent blocks always carry distinct letters and every exponent is
/// positive, so two equal words have identical block lists. The empty
/// block list is the word `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    blocks: Vec<Block>,
}

impl Word {
    pub fn one() -> Self {
        Word { blocks: Vec::new() }
    }

    pub fn letter(letter: Letter) -> Self {
        Word::power(letter, 1)
    }

    pub fn power(letter: Letter, exp: u32) -> Self {
        let mut w = Word::one();
        w.push(letter, exp);
        w
    }

    /// Builds a word from arbitrary `(letter, exponent)` pairs, merging
    /// neighbours and dropping zero exponents.
    pub fn from_blocks<I: IntoIterator<Item = (Letter, u32)>>(blocks: I) -> Self {
        let mut w = Word::one();
        for (l, e) in blocks {
            w.push(l, e);
        }
        w
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word::from_blocks(letters.iter().map(|&l| (l, 1)))
    }

    /// Appends `letter^exp` in place.
    ///
    /// Panics if the merged exponent overflows `u32`.
    pub fn push(&mut self, letter: Letter, exp: u32) {
        if exp == 0 {
            return;
        }
        match self.blocks.last_mut() {
            Some(last) if last.letter == letter => {
                last.exp = last.exp.checked_add(exp).expect("exponent overflow");
            }
            _ => self.blocks.push(Block { letter, exp }),
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.exp as usize).sum()
    }

    /// Same as [`Word::is_one`].
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn first_block(&self) -> Option<Block> {
        self.blocks.first().copied()
    }

    pub fn last_block(&self) -> Option<Block> {
        self.blocks.last().copied()
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.blocks.first().map(|b| b.letter)
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.blocks.last().map(|b| b.letter)
    }

    /// Iterates the word letter by letter.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.letter, b.exp as usize))
    }

    pub fn to_letters(&self) -> Vec<Letter> {
        self.letters().collect()
    }

    /// Plain juxtaposition, no rewriting.
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for b in &other.blocks {
            w.push(b.letter, b.exp);
        }
        w
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        let k = prefix.len();
        k <= self.len() && self.letters().take(k).eq(prefix.letters())
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        let (n, k) = (self.len(), suffix.len());
        k <= n && self.letters().skip(n - k).eq(suffix.letters())
    }

    /// Splits off the first `k` letters.
    pub fn split_at(&self, k: usize) -> (Word, Word) {
        let letters = self.to_letters();
        assert!(k <= letters.len(), "split index out of range");
        (Word::from_letters(&letters[..k]), Word::from_letters(&letters[k..]))
    }

    pub fn contains_letter(&self, letter: Letter) -> bool {
        self.blocks.iter().any(|b| b.letter == letter)
    }

    /// Parses the word literal grammar: juxtaposed letters with optional
    /// `^n`, whitespace ignored, `1` for the empty word.
    pub fn parse(src: &str) -> Result<Word, ParseError> {
        let mut p = Parser::new(src);
        let w = p.word(&[Letter::A, Letter::B, Letter::X, Letter::Q])?;
        p.expect_end()?;
        w.ok_or_else(|| p.error_here(crate::parse::ParseErrorKind::Empty))
    }
}

/// Left lexicographic comparison, letter by letter.
///
/// The first differing position decides; a proper prefix is smaller than
/// any of its extensions.
pub fn lex_compare(u: &Word, v: &Word) -> Ordering {
    let mut a = u.letters();
    let mut b = v.letters();
    loop {
        match (a.next(), b.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match x.cmp(&y) {
                Ordering::Equal => continue,
                ord => return ord,
            },
        }
    }
}

/// Words are totally ordered by length first, then lexicographically.
/// Term maps iterate in this order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| lex_compare(self, other))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "1");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if b.exp == 1 {
                write!(f, "{}", b.letter)?;
            } else {
                write!(f, "{}^{}", b.letter, b.exp)?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn blocks_are_canonical() {
        let a = Word::from_blocks([(Letter::Q, 1), (Letter::Q, 2), (Letter::X, 0), (Letter::X, 2)]);
        assert_eq!(a.blocks(), &[Block::new(Letter::Q, 3), Block::new(Letter::X, 2)]);
        assert_eq!(a.len(), 5);
        assert_eq!(a, w("q q^2 x^2"));
        assert!(Word::one().is_one());
        assert_eq!(Word::one().len(), 0);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("q^3 x^2 q^2 x").to_string(), "q^3 x^2 q^2 x");
        assert_eq!(w("qxq").to_string(), "q x q");
        assert_eq!(w("1").to_string(), "1");
        assert_eq!(w(" x 1 q ").to_string(), "x q");
        assert!(Word::parse("x^0").is_err());
        assert!(Word::parse("x^").is_err());
        assert!(Word::parse("z").is_err());
        assert!(Word::parse("").is_err());
        assert!(Word::parse("x^99999999999").is_err());
        assert!(Word::parse("x^4294967295 x").is_err());
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&w("qx"), &w("xq")), Ordering::Greater);
        assert_eq!(lex_compare(&w("q^2 x"), &w("q^2 x")), Ordering::Equal);
        // w q x against w y where y begins with x
        let wq = w("q^2 x^2 q");
        let y = w("x^2 q^3 x");
        assert_eq!(lex_compare(&wq.concat(&w("q x")), &wq.concat(&y)), Ordering::Greater);
        assert_eq!(lex_compare(&w("q^2 x^2"), &w("q x")), Ordering::Greater);
        // proper prefix is smaller
        assert_eq!(lex_compare(&w("q^2 x"), &w("q^2 x^2")), Ordering::Less);
    }

    #[test]
    fn prefix_suffix() {
        let a = w("q^3 x^2 q");
        assert!(a.starts_with(&w("q^2")));
        assert!(a.starts_with(&w("q^3 x")));
        assert!(!a.starts_with(&w("q^4")));
        assert!(a.ends_with(&w("x q")));
        assert!(!a.ends_with(&w("q^2")));
        assert_eq!(a.split_at(4), (w("q^3 x"), w("x q")));
    }
}
