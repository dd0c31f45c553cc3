//! The multiset `C` of words in the uncollected expansion of `alpha beta`
//! that are nonzero and begin in `q` and end in `x`.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use super::shape::Side;
use super::{require_s, StructureError};
use crate::field::Field;
use crate::rewrite::RewriteSystem;
use crate::word::{lex_compare, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OccurrenceKind {
    /// `w y`
    TypeI,
    /// `w q x y`
    TypeII,
    /// A term that picked up `xq` from one of the outer idempotents.
    Boundary,
}

/// One term of the expansion that landed in `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct COccurrence<F: Field> {
    pub word: Word,
    pub left: Word,
    pub right: Word,
    pub kind: OccurrenceKind,
    /// Whether a rewrite was needed to reach `word`.
    pub reduced: bool,
    pub coefficient: F,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSet<F: Field> {
    occurrences: Vec<COccurrence<F>>,
}

impl<F: Field> CSet<F> {
    pub fn occurrences(&self) -> &[COccurrence<F>] {
        &self.occurrences
    }

    /// Number of occurrences, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.occurrences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occurrences.is_empty()
    }

    pub fn occurrences_of<'a>(&'a self, w: &'a Word) -> impl Iterator<Item = &'a COccurrence<F>> + 'a {
        self.occurrences.iter().filter(move |o| &o.word == w)
    }

    /// Distinct words, sorted by the left lexicographic order.
    pub fn words(&self) -> Vec<Word> {
        let mut seen = HashSet::new();
        let mut out: Vec<Word> = self.occurrences.iter().filter(|o| seen.insert(&o.word)).map(|o| o.word.clone()).collect();
        out.sort_by(lex_compare);
        out
    }

    /// Sum of the coefficients of all occurrences of `w`.
    pub fn collected_coefficient(&self, w: &Word) -> F {
        self.occurrences_of(w).fold(F::zero(), |acc, o| acc + o.coefficient.clone())
    }
}

fn check_side<F: Field>(side: Side, terms: &[(F, Word)], sys: RewriteSystem) -> Result<(), StructureError> {
    let mut seen = HashSet::new();
    for (c, w) in terms {
        side.check(w, sys)?;
        if c.is_zero() {
            return Err(StructureError::ZeroScalar { word: w.clone() });
        }
        if !seen.insert(w) {
            return Err(StructureError::DuplicateWord { side, word: w.clone() });
        }
    }
    Ok(())
}

/// Expands `(1 - xq)(sum a_i w_i)(1 - qx)(sum b_j y_j)(1 - xq)` term by
/// term, eight terms per pair, and keeps the reduced words in `C`.
pub fn build_c_set<F: Field>(
    left: &[(F, Word)],
    right: &[(F, Word)],
    sys: RewriteSystem,
) -> Result<CSet<F>, StructureError> {
    require_s("build_c_set", sys)?;
    check_side(Side::Left, left, sys)?;
    check_side(Side::Right, right, sys)?;
    let xq = Word::from_letters(&[Letter::X, Letter::Q]);
    let qx = Word::from_letters(&[Letter::Q, Letter::X]);
    let one = Word::one();
    let mut occurrences = Vec::new();
    for (a, w) in left {
        for (b, y) in right {
            for e1 in [&one, &xq] {
                for e2 in [&one, &qx] {
                    for e3 in [&one, &xq] {
                        let flat = e1.concat(w).concat(e2).concat(y).concat(e3);
                        let out = sys.reduce(&flat);
                        let Some(v) = out.word() else { continue };
                        if v.first_letter() != Some(Letter::Q) || v.last_letter() != Some(Letter::X) {
                            continue;
                        }
                        let flips = [e1, e2, e3].iter().filter(|e| !e.is_one()).count();
                        let mut coefficient = a.clone() * b.clone();
                        if flips % 2 == 1 {
                            coefficient = -coefficient;
                        }
                        let kind = match (e1.is_one() && e3.is_one(), e2.is_one()) {
                            (true, true) => OccurrenceKind::TypeI,
                            (true, false) => OccurrenceKind::TypeII,
                            (false, _) => OccurrenceKind::Boundary,
                        };
                        occurrences.push(COccurrence {
                            word: v.clone(),
                            left: w.clone(),
                            right: y.clone(),
                            kind,
                            reduced: out.steps > 0,
                            coefficient,
                        });
                    }
                }
            }
        }
    }
    Ok(CSet { occurrences })
}

/// The largest word of `C` in the left lexicographic order.
pub fn find_tau<F: Field>(c: &CSet<F>) -> Result<Word, StructureError> {
    c.occurrences
        .iter()
        .map(|o| &o.word)
        .max_by(|a, b| lex_compare(a, b))
        .cloned()
        .ok_or(StructureError::EmptyCSet)
}

/// `tau` candidates compare this way: `Greater` means `a` beats `b`.
pub(crate) fn lex_greater(a: &Word, b: &Word) -> bool {
    lex_compare(a, b) == Ordering::Greater
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf3, Rational};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ones(words: &[&str]) -> Vec<(Rational, Word)> {
        words.iter().map(|s| (Rational::from_i64(1), w(s))).collect()
    }

    #[test]
    fn trivial_family() {
        let s = RewriteSystem::default_s();
        let c = build_c_set(&ones(&["1"]), &ones(&["1"]), s).unwrap();
        assert_eq!(c.words(), vec![w("q x")]);
        assert_eq!(c.len(), 1);
        let o = &c.occurrences()[0];
        assert_eq!(o.kind, OccurrenceKind::TypeII);
        assert_eq!(o.coefficient, Rational::from_i64(-1));
        assert_eq!(find_tau(&c).unwrap(), w("q x"));
    }

    #[test]
    fn families() {
        let s = RewriteSystem::default_s();
        let c = build_c_set(&ones(&["1"]), &ones(&["1", "x"]), s).unwrap();
        assert!(c.words().contains(&w("q x^2")));
        let c = build_c_set(&ones(&["1", "q"]), &ones(&["1", "x"]), s).unwrap();
        assert_eq!(c.words(), vec![w("q x"), w("q x^2"), w("q^2 x"), w("q^2 x^2")]);
        assert_eq!(find_tau(&c).unwrap(), w("q^2 x^2"));
        // qx: type II from (1,1) and type I from (q,x) cancel
        assert_eq!(c.collected_coefficient(&w("q x")), Rational::from_i64(0));
        assert!(c.occurrences().iter().all(|o| o.kind != OccurrenceKind::Boundary));
    }

    #[test]
    fn empty_and_invalid() {
        let s = RewriteSystem::default_s();
        let c = build_c_set::<Rational>(&[], &ones(&["1"]), s).unwrap();
        assert!(c.is_empty());
        assert_eq!(find_tau(&c), Err(StructureError::EmptyCSet));
        assert!(matches!(build_c_set(&ones(&["q x"]), &ones(&["1"]), s), Err(StructureError::ShapeViolation { .. })));
        assert!(matches!(build_c_set(&ones(&["q", "q"]), &ones(&["1"]), s), Err(StructureError::DuplicateWord { .. })));
        let zero = vec![(Gf3::from_i64(3), w("q"))];
        assert!(matches!(build_c_set(&zero, &[(Gf3::from_i64(1), w("x"))], s), Err(StructureError::ZeroScalar { .. })));
    }
}
