//! Reference implementations on plain strings, used as independent oracles.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nilreg_core::{RewriteSystem, Word};

/// Naive string rewriting: repeatedly replace the first redex found.
/// `None` means zero.
pub fn flat_reduce(s: &str, nil: char, other: char, n: usize) -> Option<String> {
    let zero: String = std::iter::repeat_n(nil, n).collect();
    let a: String = [nil, other, nil].iter().collect();
    let b: String = [other, nil, other].iter().collect();
    let mut cur = s.to_string();
    loop {
        if cur.contains(&zero) {
            return None;
        }
        if let Some(i) = cur.find(&a) {
            cur.replace_range(i..i + 3, &nil.to_string());
        } else if let Some(i) = cur.find(&b) {
            cur.replace_range(i..i + 3, &other.to_string());
        } else {
            return Some(cur);
        }
    }
}

pub fn s_reduce(s: &str, n: usize) -> Option<String> {
    flat_reduce(s, 'x', 'q', n)
}

/// `F<a, b | a^m = 0>`: only the nilpotency rule.
pub fn r_reduce(s: &str, m: usize) -> Option<String> {
    let zero = "a".repeat(m);
    (!s.contains(&zero)).then(|| s.to_string())
}

pub fn all_strings(alphabet: [char; 2], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let next: Vec<String> =
            frontier.iter().flat_map(|w| alphabet.iter().map(move |c| format!("{w}{c}"))).collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `q^2 x` style rendering to the flat string `qqx`.
pub fn flatten(w: &Word) -> String {
    w.letters().map(|l| l.symbol()).collect()
}

pub fn unflatten(s: &str) -> Word {
    if s.is_empty() {
        Word::one()
    } else {
        s.chars().map(|c| c.to_string()).collect::<Vec<_>>().join(" ").parse().unwrap()
    }
}

/// Normal words of `S(n)` up to `max_len` by reducing every string.
pub fn brute_force_basis(n: usize, max_len: usize) -> BTreeSet<String> {
    all_strings(['x', 'q'], max_len).iter().filter_map(|s| s_reduce(s, n)).filter(|r| r.len() <= max_len).collect()
}

pub fn s3() -> RewriteSystem {
    RewriteSystem::default_s()
}
