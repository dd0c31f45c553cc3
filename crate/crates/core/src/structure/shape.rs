//! The support words allowed in `alpha` and `beta`.
//!
//! Left words (inside `(1 - xq) . (1 - qx)`) are `1` or begin and end in
//! `q`; right words (inside `(1 - qx) . (1 - xq)`) are `1` or begin and end
//! in `x`. Any other normal word is killed by the surrounding idempotents.

use std::fmt;

use serde::Serialize;

use super::{require_s, StructureError};
use crate::rewrite::RewriteSystem;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl Side {
    fn letter(self) -> Letter {
        match self {
            Side::Left => Letter::Q,
            Side::Right => Letter::X,
        }
    }

    pub(crate) fn admits(self, w: &Word, sys: RewriteSystem) -> bool {
        sys.is_basis_word(w)
            && (w.is_one() || (w.first_letter() == Some(self.letter()) && w.last_letter() == Some(self.letter())))
    }

    pub(crate) fn check(self, w: &Word, sys: RewriteSystem) -> Result<(), StructureError> {
        require_s("shape word", sys)?;
        if self.admits(w, sys) {
            Ok(())
        } else {
            Err(StructureError::ShapeViolation { side: self, word: w.clone() })
        }
    }
}

/// A normal word of the form `1`, `q`, `q^2` or `q z q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeftShapeWord(Word);

/// A normal word of the form `1`, `x`, `x^2` or `x z x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RightShapeWord(Word);

impl LeftShapeWord {
    pub fn new(w: Word, sys: RewriteSystem) -> Result<Self, StructureError> {
        Side::Left.check(&w, sys)?;
        Ok(LeftShapeWord(w))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

impl RightShapeWord {
    pub fn new(w: Word, sys: RewriteSystem) -> Result<Self, StructureError> {
        Side::Right.check(&w, sys)?;
        Ok(RightShapeWord(w))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

impl fmt::Display for LeftShapeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for RightShapeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All left shape words of length at most `max_len`, in basis order.
pub fn left_shape_words(sys: RewriteSystem, max_len: usize) -> Vec<LeftShapeWord> {
    sys.enumerate_basis(max_len).into_iter().filter(|w| Side::Left.admits(w, sys)).map(LeftShapeWord).collect()
}

/// All right shape words of length at most `max_len`, in basis order.
pub fn right_shape_words(sys: RewriteSystem, max_len: usize) -> Vec<RightShapeWord> {
    sys.enumerate_basis(max_len).into_iter().filter(|w| Side::Right.admits(w, sys)).map(RightShapeWord).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn shape_membership() {
        let s = RewriteSystem::default_s();
        for ok in ["1", "q", "q^2", "q^3", "q x^2 q", "q x q^2"] {
            let word = w(ok);
            assert_eq!(LeftShapeWord::new(word.clone(), s).is_ok(), s.is_basis_word(&word), "{ok}");
        }
        assert!(LeftShapeWord::new(w("q x^2 q"), s).is_ok());
        assert!(LeftShapeWord::new(w("q x"), s).is_err());
        assert!(LeftShapeWord::new(w("x q"), s).is_err());
        assert!(LeftShapeWord::new(w("q x q"), s).is_err());
        assert!(RightShapeWord::new(w("x q^2 x"), s).is_ok());
        assert!(RightShapeWord::new(w("x^2"), s).is_ok());
        assert!(RightShapeWord::new(w("x^3"), s).is_err());
        assert!(RightShapeWord::new(w("q x"), s).is_err());
    }

    #[test]
    fn small_shape_sets() {
        let s = RewriteSystem::default_s();
        let l: Vec<String> = left_shape_words(s, 3).iter().map(|w| w.to_string()).collect();
        assert_eq!(l, ["1", "q", "q^2", "q^3"]);
        let r: Vec<String> = right_shape_words(s, 3).iter().map(|w| w.to_string()).collect();
        assert_eq!(r, ["1", "x", "x^2"]);
        assert_eq!(left_shape_words(s, 4).len(), 6);
        assert_eq!(right_shape_words(s, 4).len(), 4);
    }
}
