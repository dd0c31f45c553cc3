//! Exhaustive search for `alpha`, `beta` with `alpha beta = 1 - xq`.
//!
//! `alpha = (1 - xq)(sum a_i w_i)(1 - qx)` and
//! `beta = (1 - qx)(sum b_j y_j)(1 - xq)` with `w_i`, `y_j` ranging over
//! the shape words up to a length bound and the coefficients over a finite
//! pool. Since `(1 - qx)` is idempotent,
//! `alpha beta = sum_ij a_i b_j P_ij` with
//! `P_ij = (1 - xq) w_i (1 - qx) y_j (1 - xq)`, so the products are
//! precomputed once as dense vectors.

use std::collections::BTreeMap;

use serde_json::json;

use super::shape::{left_shape_words, right_shape_words};
use super::{require_s, StructureError};
use crate::element::AlgebraElement;
use crate::field::Field;
use crate::par::Execution;
use crate::report::{ReportBuilder, Status, VerificationReport};
use crate::rewrite::RewriteSystem;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_word_len: usize,
    /// Coefficients range over `-bound..=bound` for the rationals; finite
    /// fields always use every element.
    pub coefficient_bound: u32,
    /// Refuse searches with more candidates than this.
    pub limit: u128,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_word_len: 3, coefficient_bound: 1, limit: 1 << 32 }
    }
}

/// `|pool|^(|L| + |R|)`: the number of `(alpha, beta)` coefficient vectors.
pub fn analytic_candidate_count<F: Field>(sys: RewriteSystem, config: &SearchConfig) -> u128 {
    let slots = left_shape_words(sys, config.max_word_len).len() + right_shape_words(sys, config.max_word_len).len();
    let base = F::search_pool(config.coefficient_bound).len() as u128;
    (0..slots).fold(1u128, |acc, _| acc.saturating_mul(base))
}

fn digits(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(idx % base);
        idx /= base;
    }
    out
}

fn count(base: usize, len: usize) -> u128 {
    (0..len).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

pub fn search_unit_regular_witness<F: Field>(
    sys: RewriteSystem,
    config: &SearchConfig,
    exec: Execution,
) -> Result<VerificationReport, StructureError> {
    require_s("unit-regular-search", sys)?;
    let one = AlgebraElement::<F>::one(sys);
    let e = &one - &(&AlgebraElement::x(sys) * &AlgebraElement::q(sys));
    search_for_target(sys, config, exec, &e)
}

/// The same search with an arbitrary right-hand side in place of `1 - xq`.
pub(crate) fn search_for_target<F: Field>(
    sys: RewriteSystem,
    config: &SearchConfig,
    exec: Execution,
    goal: &AlgebraElement<F>,
) -> Result<VerificationReport, StructureError> {
    let left: Vec<Word> = left_shape_words(sys, config.max_word_len).into_iter().map(|w| w.into_word()).collect();
    let right: Vec<Word> = right_shape_words(sys, config.max_word_len).into_iter().map(|w| w.into_word()).collect();
    let pool = F::search_pool(config.coefficient_bound);
    let base = pool.len();
    let analytic = analytic_candidate_count::<F>(sys, config);
    let mut report = ReportBuilder::new("unit-regular-search")
        .param("n", sys.degree())
        .param("field", F::NAME)
        .param("max_word_len", config.max_word_len as u64)
        .param("left_words", left.len() as u64)
        .param("right_words", right.len() as u64)
        .param("analytic_count", analytic.to_string());
    if F::NAME == "rational" {
        report = report.param("coefficient_bound", config.coefficient_bound);
    }
    if analytic > config.limit {
        return Err(StructureError::SearchTooLarge { candidates: analytic, limit: config.limit });
    }
    let (n_alpha, n_beta) = (count(base, left.len()) as usize, count(base, right.len()) as usize);

    type E<F> = AlgebraElement<F>;
    let one = E::<F>::one(sys);
    let e = &one - &(&E::x(sys) * &E::q(sys));
    let f = &one - &(&E::q(sys) * &E::x(sys));
    let products: Vec<Vec<E<F>>> = left
        .iter()
        .map(|w| {
            let head = &(&e * &E::word(w, sys)) * &f;
            right.iter().map(|y| &(&head * &E::word(y, sys)) * &e).collect()
        })
        .collect();
    let mut index = BTreeMap::new();
    for p in products.iter().flatten().chain(std::iter::once(goal)) {
        for w in p.support() {
            let k = index.len();
            index.entry(w.clone()).or_insert(k);
        }
    }
    let dim = index.len();
    let dense = |p: &E<F>| -> Vec<F> {
        let mut v = vec![F::zero(); dim];
        for (w, c) in p.terms() {
            v[index[w]] = c.clone();
        }
        v
    };
    let p: Vec<Vec<Vec<F>>> = products.iter().map(|row| row.iter().map(dense).collect()).collect();
    let target = dense(goal);

    let found = exec.find_first(n_alpha, |ai| {
        let a = digits(ai, base, left.len());
        let mut partial = vec![vec![F::zero(); dim]; right.len()];
        for (i, &d) in a.iter().enumerate() {
            if pool[d].is_zero() {
                continue;
            }
            for (j, acc) in partial.iter_mut().enumerate() {
                for (t, v) in acc.iter_mut().zip(&p[i][j]) {
                    if !v.is_zero() {
                        *t = t.clone() + pool[d].clone() * v.clone();
                    }
                }
            }
        }
        (0..n_beta).find(|&bi| {
            let b = digits(bi, base, right.len());
            let mut sum = vec![F::zero(); dim];
            for (j, &d) in b.iter().enumerate() {
                if pool[d].is_zero() {
                    continue;
                }
                for (t, v) in sum.iter_mut().zip(&partial[j]) {
                    *t = t.clone() + pool[d].clone() * v.clone();
                }
            }
            sum == target
        })
    });

    Ok(match found {
        None => report.finish(Status::Exhausted, None, analytic as u64),
        Some((ai, bi)) => {
            let combo = |words: &[Word], ds: Vec<usize>| {
                E::from_terms(ds.into_iter().zip(words).map(|(d, w)| (pool[d].clone(), w.clone())), sys)
            };
            let alpha = &(&e * &combo(&left, digits(ai, base, left.len()))) * &f;
            let beta = &(&f * &combo(&right, digits(bi, base, right.len()))) * &e;
            let confirmed = &alpha * &beta == *goal;
            let witness = json!({ "alpha": alpha.to_string(), "beta": beta.to_string(), "confirmed": confirmed });
            report.finish(Status::Fail, Some(witness), (ai * n_beta + bi + 1) as u64)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf3, Rational};
    use crate::linalg::solve;

    fn s3() -> RewriteSystem {
        RewriteSystem::default_s()
    }

    fn cfg(len: usize) -> SearchConfig {
        SearchConfig { max_word_len: len, ..SearchConfig::default() }
    }

    #[test]
    fn exhausted_small_bounds() {
        for len in 0..=3 {
            let r = search_unit_regular_witness::<Gf2>(s3(), &cfg(len), Execution::Sequential).unwrap();
            assert_eq!(r.status, Status::Exhausted, "{r}");
            assert_eq!(r.candidates_examined as u128, analytic_candidate_count::<Gf2>(s3(), &cfg(len)));
        }
        assert_eq!(analytic_candidate_count::<Gf2>(s3(), &cfg(0)), 4);
        assert_eq!(analytic_candidate_count::<Gf2>(s3(), &cfg(3)), 128);
        assert_eq!(analytic_candidate_count::<Gf3>(s3(), &cfg(3)), 2187);
        let r = search_unit_regular_witness::<Rational>(s3(), &cfg(2), Execution::Sequential).unwrap();
        assert_eq!(r.status, Status::Exhausted);
    }

    #[test]
    fn reachable_target_is_found() {
        type E = AlgebraElement<Gf2>;
        let sys = s3();
        let one = E::one(sys);
        let e = &one - &(&E::x(sys) * &E::q(sys));
        let f = &one - &(&E::q(sys) * &E::x(sys));
        let goal = &(&(&e * &E::parse("q^2 + q", sys).unwrap()) * &f) * &(&E::parse("x^2", sys).unwrap() * &e);
        let r = search_for_target(sys, &cfg(2), Execution::Parallel, &goal).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.unwrap()["confirmed"], true);
    }

    #[test]
    fn limit_is_enforced() {
        let c = SearchConfig { limit: 100, ..cfg(3) };
        assert!(matches!(
            search_unit_regular_witness::<Gf2>(s3(), &c, Execution::Sequential),
            Err(StructureError::SearchTooLarge { candidates: 128, limit: 100 })
        ));
    }

    /// For each alpha, ask a linear solver whether any beta over the field
    /// works, so beta is not enumerated at all.
    #[test]
    fn linear_solve_agrees() {
        type E = AlgebraElement<Rational>;
        let sys = s3();
        let left: Vec<Word> = left_shape_words(sys, 3).into_iter().map(|w| w.into_word()).collect();
        let right: Vec<Word> = right_shape_words(sys, 3).into_iter().map(|w| w.into_word()).collect();
        let one = E::one(sys);
        let e = &one - &(&E::x(sys) * &E::q(sys));
        let f = &one - &(&E::q(sys) * &E::x(sys));
        for mask in 0..1u32 << left.len() {
            let u = E::from_terms(
                left.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| (Rational::from_i64(1), w.clone())),
                sys,
            );
            let alpha = &(&e * &u) * &f;
            let cols: Vec<E> = right.iter().map(|y| &(&alpha * &E::word(y, sys)) * &e).collect();
            let mut words: Vec<Word> = cols.iter().chain([&e]).flat_map(|c| c.support().cloned()).collect();
            words.sort();
            words.dedup();
            let rows: Vec<Vec<Rational>> = words.iter().map(|w| cols.iter().map(|c| c.coeff(w)).collect()).collect();
            let rhs: Vec<Rational> = words.iter().map(|w| e.coeff(w)).collect();
            assert!(solve(&rows, &rhs).is_none(), "alpha mask {mask}");
        }
    }
}
