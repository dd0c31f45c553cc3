//! Type I (`w y`) and type II (`w q x y`) products and the rules that
//! predict when they vanish or reduce.

use serde::Serialize;
use serde_json::json;

use super::shape::{left_shape_words, right_shape_words};
use super::{require_s, StructureError};
use crate::par::Execution;
use crate::report::{ReportBuilder, VerificationReport};
use crate::rewrite::{NormalForm, ReductionOutcome, RewriteSystem};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InterfaceClass {
    Zero,
    Reduced,
    NoReduction,
}

/// The type I word `w y`.
pub fn type_i(w: &Word, y: &Word, sys: RewriteSystem) -> ReductionOutcome {
    sys.concat_reduce(w, y)
}

/// The type II word `w q x y`.
pub fn type_ii(w: &Word, y: &Word, sys: RewriteSystem) -> ReductionOutcome {
    let mut flat = w.clone();
    flat.push(Letter::Q, 1);
    flat.push(Letter::X, 1);
    sys.reduce(&flat.concat(y))
}

/// How the product of two normal words behaves at the interface.
pub fn classify_interface(w: &Word, y: &Word, sys: RewriteSystem) -> Result<InterfaceClass, StructureError> {
    for u in [w, y] {
        if !sys.is_basis_word(u) {
            return Err(StructureError::NotNormal(u.clone()));
        }
    }
    let out = sys.concat_reduce(w, y);
    Ok(match out.result {
        NormalForm::Zero => InterfaceClass::Zero,
        NormalForm::Word(_) if out.steps > 0 => InterfaceClass::Reduced,
        NormalForm::Word(_) => InterfaceClass::NoReduction,
    })
}

fn pattern(letters: &[(Letter, u32)]) -> Word {
    Word::from_blocks(letters.iter().copied())
}

/// `w y` vanishes: `w` ends in `x^2 q` and `y` begins in `x^2`.
pub fn predicted_type_i_zero(w: &Word, y: &Word) -> bool {
    w.ends_with(&pattern(&[(Letter::X, 2), (Letter::Q, 1)])) && y.starts_with(&pattern(&[(Letter::X, 2)]))
}

/// `w y` needs a rewrite at the interface: `w` ends in `xq` and `y` begins
/// in `x`, or `w` ends in `q` and `y` begins in `xq`.
pub fn predicted_type_i_reduction(w: &Word, y: &Word) -> bool {
    let xq = pattern(&[(Letter::X, 1), (Letter::Q, 1)]);
    (w.ends_with(&xq) && y.first_letter() == Some(Letter::X))
        || (w.last_letter() == Some(Letter::Q) && y.starts_with(&xq))
}

/// `w q x y` vanishes: `y` begins in `x^2`.
pub fn predicted_type_ii_zero(y: &Word) -> bool {
    y.starts_with(&pattern(&[(Letter::X, 2)]))
}

/// Drops the last letter of `w` and the first letter of `y`.
fn splice(w: &Word, y: &Word) -> Word {
    let (head, _) = w.split_at(w.len() - 1);
    let (_, tail) = y.split_at(1);
    head.concat(&tail)
}

/// Compares the predicted and the computed behaviour of one pair and
/// describes the first mismatch.
fn pair_mismatch(w: &Word, y: &Word, sys: RewriteSystem) -> Option<String> {
    let one = type_i(w, y, sys);
    let zero_i = predicted_type_i_zero(w, y);
    if one.is_zero() != zero_i {
        return Some(format!("type I zero: predicted {zero_i}, computed {}", one.result));
    }
    if let Some(v) = one.word() {
        let reduce_i = predicted_type_i_reduction(w, y);
        if (one.steps > 0) != reduce_i {
            return Some(format!("type I reduction: predicted {reduce_i}, took {} steps", one.steps));
        }
        let expected = if reduce_i { splice(w, y) } else { w.concat(y) };
        if *v != expected {
            return Some(format!("type I word: predicted {expected}, computed {v}"));
        }
    }
    let two = type_ii(w, y, sys);
    let zero_ii = predicted_type_ii_zero(y);
    if two.is_zero() != zero_ii {
        return Some(format!("type II zero: predicted {zero_ii}, computed {}", two.result));
    }
    if !two.is_zero() && two.steps > 0 {
        return Some(format!("type II word {} needed {} rewrites", two.result, two.steps));
    }
    None
}

/// Checks the four clauses on every pair of shape words of length at most
/// `max_len`, for `n = 3`.
pub fn check_types_lemma(sys: RewriteSystem, max_len: usize, exec: Execution) -> Result<VerificationReport, StructureError> {
    require_s("types-lemma", sys)?;
    if sys.degree() != 3 {
        return Err(StructureError::UnsupportedDegree { check: "types-lemma", requirement: "= 3", n: sys.degree() });
    }
    let report = ReportBuilder::new("types-lemma").param("n", sys.degree()).param("max_len", max_len as u64);
    let left = left_shape_words(sys, max_len);
    let right = right_shape_words(sys, max_len);
    let results = exec.map(&left, |w| {
        let mut first = None;
        for y in &right {
            if let Some(reason) = pair_mismatch(w.word(), y.word(), sys) {
                first = Some(json!({ "w": w.to_string(), "y": y.to_string(), "reason": reason }));
                break;
            }
        }
        first
    });
    let failure = results.into_iter().flatten().next();
    Ok(report.verdict(failure, (left.len() * right.len()) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn s3() -> RewriteSystem {
        RewriteSystem::default_s()
    }

    #[test]
    fn type_examples() {
        assert_eq!(type_i(&w("q"), &w("x"), s3()).word(), Some(&w("q x")));
        assert!(type_i(&w("q x^2 q"), &w("x^2"), s3()).is_zero());
        let r = type_i(&w("q^2"), &w("x q^2 x"), s3());
        assert_eq!(r.word(), Some(&w("q^3 x")));
        assert_eq!(r.steps, 1);
        assert_eq!(type_ii(&w("1"), &w("1"), s3()).word(), Some(&w("q x")));
        assert!(type_ii(&w("q^2"), &w("x^2 q x"), s3()).is_zero());
        assert_eq!(type_ii(&w("q"), &w("x"), s3()).word(), Some(&w("q^2 x^2")));
    }

    #[test]
    fn interface_classes() {
        let c = |a: &str, b: &str| classify_interface(&w(a), &w(b), s3()).unwrap();
        assert_eq!(c("q x^2 q", "x^2"), InterfaceClass::Zero);
        assert_eq!(c("q x^2 q", "x q^2 x"), InterfaceClass::Reduced);
        assert_eq!(c("q^2", "x^2"), InterfaceClass::NoReduction);
        assert_eq!(c("q^2", "x q"), InterfaceClass::Reduced);
        assert_eq!(c("q x^2", "x"), InterfaceClass::Zero);
        assert!(matches!(
            classify_interface(&w("q^2 x q"), &w("x"), s3()),
            Err(StructureError::NotNormal(_))
        ));
    }

    #[test]
    fn small_lemma_check() {
        let r = check_types_lemma(s3(), 5, Execution::Sequential).unwrap();
        assert!(r.is_success(), "{r}");
        assert!(check_types_lemma(RewriteSystem::s(4).unwrap(), 3, Execution::Sequential).is_err());
    }
}
