//! Empirical confluence: critical pairs and strategy independence.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::par::Execution;
use crate::report::{ReportBuilder, VerificationReport};
use crate::rewrite::RewriteSystem;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfluenceConfig {
    pub max_len: usize,
    /// Random rewriting sequences tried per word.
    pub strategies: usize,
    pub seed: u64,
}

impl Default for ConfluenceConfig {
    fn default() -> Self {
        ConfluenceConfig { max_len: 8, strategies: 8, seed: 0 }
    }
}

/// Every word over the alphabet with at most `max_len` letters,
/// `2^(max_len + 1) - 1` of them.
pub fn all_words(sys: RewriteSystem, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::one()];
    let mut frontier = vec![Word::one()];
    for _ in 0..max_len {
        let next: Vec<Word> = frontier
            .iter()
            .flat_map(|w| {
                sys.alphabet().into_iter().map(move |l| {
                    let mut c = w.clone();
                    c.push(l, 1);
                    c
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn check_word(sys: RewriteSystem, w: &Word, idx: usize, config: &ConfluenceConfig) -> Option<Value> {
    let nf = sys.reduce(w).result;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    for k in 0..config.strategies {
        let other = sys.reduce_random(w, &mut rng).result;
        if other != nf {
            return Some(json!({ "word": w.to_string(), "strategy": k, "reduce": nf.to_string(), "random": other.to_string() }));
        }
    }
    let reachable = sys.reachable_normal_forms(w);
    if reachable.len() != 1 || !reachable.contains(&nf) {
        let all: Vec<String> = reachable.iter().map(ToString::to_string).collect();
        return Some(json!({ "word": w.to_string(), "reduce": nf.to_string(), "reachable": all }));
    }
    if let Some(v) = nf.word() {
        if sys.reduce(v).result != nf {
            return Some(json!({ "word": w.to_string(), "check": "idempotence" }));
        }
    }
    let fixed = nf.word() == Some(w);
    if sys.is_basis_word(w) != fixed {
        return Some(json!({ "word": w.to_string(), "check": "basis predicate", "fixpoint": fixed }));
    }
    None
}

/// All critical pairs join, and every word up to `max_len` reaches the same
/// normal form under the default strategy, under seeded random strategies,
/// and along every rewriting sequence.
pub fn check_confluence(sys: RewriteSystem, config: &ConfluenceConfig, exec: Execution) -> VerificationReport {
    let report = ReportBuilder::new("confluence")
        .param("system", sys.to_string())
        .param("max_len", config.max_len as u64)
        .param("strategies", config.strategies as u64)
        .param("seed", config.seed);
    let pairs = sys.critical_pairs();
    let bad_pair = pairs.iter().find(|p| !p.is_joinable()).map(|p| {
        json!({ "overlap": p.overlap.to_string(), "left": p.left.to_string(), "right": p.right.to_string() })
    });
    let words = all_words(sys, config.max_len);
    let failure = bad_pair.or_else(|| {
        let indexed: Vec<(usize, &Word)> = words.iter().enumerate().collect();
        exec.map(&indexed, |&(i, w)| check_word(sys, w, i, config)).into_iter().flatten().next()
    });
    report.verdict(failure, (pairs.len() + words.len()) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_confluence() {
        let s = RewriteSystem::default_s();
        assert_eq!(all_words(s, 8).len(), 511);
        let cfg = ConfluenceConfig { max_len: 6, strategies: 3, seed: 5 };
        let r = check_confluence(s, &cfg, Execution::Sequential);
        assert!(r.is_success(), "{r}");
        assert_eq!(r, check_confluence(s, &cfg, Execution::Parallel).with_elapsed(r.elapsed_ms));
        let r = check_confluence(RewriteSystem::r(2).unwrap(), &cfg, Execution::Sequential);
        assert!(r.is_success(), "{r}");
    }
}
