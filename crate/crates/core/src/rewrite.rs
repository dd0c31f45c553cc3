//! Monomial rewriting to normal form.
//!
//! Two presentations are supported:
//!
//! * `S`: letters `x`, `q` with rules `x^n -> 0`, `xqx -> x`, `qxq -> q`;
//! * `R`: letters `a`, `b` with the single rule `a^m -> 0`.
//!
//! The production reducer works on run-length blocks with a stack: the
//! stack always holds a normal word, so a new redex can only end at the
//! block just pushed. This is leftmost-innermost rewriting. A separate
//! letter-level reducer with a pluggable redex choice backs the
//! confluence checks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::word::{Block, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Presentation {
    /// `F<x, q | x^n = 0, xqx = x, qxq = q>`
    S,
    /// `F<a, b | a^m = 0>`
    R,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Presentation::S => write!(f, "S"),
            Presentation::R => write!(f, "R"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("nilpotency degree {degree} is too small for presentation {presentation} (minimum {minimum})")]
    InvalidDegree {
        presentation: Presentation,
        degree: u32,
        minimum: u32,
    },
}

/// A monomial rule `lhs -> rhs`, where `rhs = None` means zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Option<Word>,
}

/// Result of reducing a word: zero or a normal word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalForm {
    Zero,
    Word(Word),
}

impl NormalForm {
    pub fn word(&self) -> Option<&Word> {
        match self {
            NormalForm::Zero => None,
            NormalForm::Word(w) => Some(w),
        }
    }

    pub fn into_word(self) -> Option<Word> {
        match self {
            NormalForm::Zero => None,
            NormalForm::Word(w) => Some(w),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NormalForm::Zero)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Zero => write!(f, "0"),
            NormalForm::Word(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub result: NormalForm,
    /// Number of rule applications performed.
    pub steps: usize,
}

impl ReductionOutcome {
    pub fn word(&self) -> Option<&Word> {
        self.result.word()
    }

    pub fn is_zero(&self) -> bool {
        self.result.is_zero()
    }
}

/// An overlap between two rule left-hand sides together with the two
/// fully reduced branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left: NormalForm,
    pub right: NormalForm,
}

impl CriticalPair {
    pub fn is_joinable(&self) -> bool {
        self.left == self.right
    }
}

/// One of the two fixed rule families together with its nilpotency degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RewriteSystem {
    presentation: Presentation,
    degree: u32,
}

impl RewriteSystem {
    pub const DEFAULT_N: u32 = 3;

    /// The presentation of `S` with `x^n = 0`, `n >= 2`.
    pub fn s(n: u32) -> Result<Self, RewriteError> {
        if n < 2 {
            return Err(RewriteError::InvalidDegree { presentation: Presentation::S, degree: n, minimum: 2 });
        }
        Ok(RewriteSystem { presentation: Presentation::S, degree: n })
    }

    /// The truncated free algebra with `a^m = 0`, `m >= 1`.
    ///
    /// `m = 1` kills `a` outright, which is the polynomial ring in `b`.
    pub fn r(m: u32) -> Result<Self, RewriteError> {
        if m < 1 {
            return Err(RewriteError::InvalidDegree { presentation: Presentation::R, degree: m, minimum: 1 });
        }
        Ok(RewriteSystem { presentation: Presentation::R, degree: m })
    }

    /// The algebra `R` paired with `S` of nilpotency `n`, i.e. `a^(n-1) = 0`.
    pub fn r_for(n: u32) -> Result<Self, RewriteError> {
        if n < 2 {
            return Err(RewriteError::InvalidDegree { presentation: Presentation::S, degree: n, minimum: 2 });
        }
        RewriteSystem::r(n - 1)
    }

    pub fn default_s() -> Self {
        RewriteSystem::s(Self::DEFAULT_N).expect("default degree is valid")
    }

    pub fn presentation(&self) -> Presentation {
        self.presentation
    }

    /// Exponent at which the nilpotent letter vanishes.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nilpotent_letter(&self) -> Letter {
        match self.presentation {
            Presentation::S => Letter::X,
            Presentation::R => Letter::A,
        }
    }

    /// The other generator (`q` or `b`).
    pub fn partner_letter(&self) -> Letter {
        match self.presentation {
            Presentation::S => Letter::Q,
            Presentation::R => Letter::B,
        }
    }

    /// Alphabet in increasing letter order.
    pub fn alphabet(&self) -> [Letter; 2] {
        [self.nilpotent_letter(), self.partner_letter()]
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.alphabet().contains(&letter)
    }

    pub fn rules(&self) -> Vec<Rule> {
        let (x, q) = (self.nilpotent_letter(), self.partner_letter());
        let mut rules = vec![Rule { lhs: Word::power(x, self.degree), rhs: None }];
        if self.presentation == Presentation::S {
            rules.push(Rule { lhs: Word::from_letters(&[x, q, x]), rhs: Some(Word::letter(x)) });
            rules.push(Rule { lhs: Word::from_letters(&[q, x, q]), rhs: Some(Word::letter(q)) });
        }
        rules
    }

    /// Reduces `w` to its normal form.
    pub fn reduce(&self, w: &Word) -> ReductionOutcome {
        let mut stack = Vec::with_capacity(w.blocks().len());
        let mut steps = 0;
        for &b in w.blocks() {
            if !self.push_block(&mut stack, b, &mut steps) {
                return ReductionOutcome { result: NormalForm::Zero, steps };
            }
        }
        ReductionOutcome { result: NormalForm::Word(Word::from_blocks(stack.iter().map(|b| (b.letter, b.exp)))), steps }
    }

    /// Reduces the product `u v` of two normal words.
    ///
    /// Since `u` is already normal it is used as the initial stack, so
    /// only interface redexes are ever found.
    pub fn concat_reduce(&self, u: &Word, v: &Word) -> ReductionOutcome {
        debug_assert!(self.is_basis_word(u), "left factor {u} is not normal");
        let mut stack: Vec<Block> = u.blocks().to_vec();
        let mut steps = 0;
        for &b in v.blocks() {
            if !self.push_block(&mut stack, b, &mut steps) {
                return ReductionOutcome { result: NormalForm::Zero, steps };
            }
        }
        ReductionOutcome { result: NormalForm::Word(Word::from_blocks(stack.iter().map(|b| (b.letter, b.exp)))), steps }
    }

    /// Pushes one block onto a normal stack, rewriting any redex ending at
    /// the top. Returns `false` if the word became zero.
    fn push_block(&self, stack: &mut Vec<Block>, b: Block, steps: &mut usize) -> bool {
        match stack.last_mut() {
            Some(top) if top.letter == b.letter => {
                top.exp = top.exp.checked_add(b.exp).expect("exponent overflow");
            }
            _ => stack.push(b),
        }
        let nil = self.nilpotent_letter();
        loop {
            let top = *stack.last().expect("stack is non-empty after a push");
            if top.letter == nil && top.exp >= self.degree {
                *steps += 1;
                return false;
            }
            if self.presentation == Presentation::S && stack.len() >= 3 {
                let k = stack.len();
                let (left, mid) = (stack[k - 3], stack[k - 2]);
                if mid.exp == 1 {
                    // u^i v u^j -> u^(i+j-1)
                    let merged = left.exp.checked_add(top.exp - 1).expect("exponent overflow");
                    stack.truncate(k - 3);
                    stack.push(Block::new(left.letter, merged));
                    *steps += 1;
                    continue;
                }
            }
            return true;
        }
    }

    /// Closed-form normal-word test.
    ///
    /// For `S`: blocks alternate, every `x`-block has exponent below `n`,
    /// and only the first and last block may have exponent one. For `R`:
    /// every `a`-block has exponent below `m`.
    pub fn is_basis_word(&self, w: &Word) -> bool {
        let blocks = w.blocks();
        let last = blocks.len().saturating_sub(1);
        blocks.iter().enumerate().all(|(i, b)| {
            if !self.contains(b.letter) {
                return false;
            }
            if b.letter == self.nilpotent_letter() && b.exp >= self.degree {
                return false;
            }
            !(self.presentation == Presentation::S && i > 0 && i < last && b.exp == 1)
        })
    }

    /// All normal words of length at most `max_len`, sorted by length then
    /// lexicographically.
    pub fn enumerate_basis(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::one()];
        let mut frontier = vec![Word::one()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for l in self.alphabet() {
                    let mut c = w.clone();
                    c.push(l, 1);
                    if self.is_basis_word(&c) {
                        next.push(c);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        out
    }

    /// Letter-level rewriting where `choose` picks which redex to contract.
    ///
    /// `choose` receives the list of `(rule index, position)` redexes and
    /// returns an index into it.
    pub fn reduce_with<C>(&self, w: &Word, mut choose: C) -> ReductionOutcome
    where
        C: FnMut(&[(usize, usize)]) -> usize,
    {
        let rules: Vec<(Vec<Letter>, Option<Vec<Letter>>)> = self
            .rules()
            .into_iter()
            .map(|r| (r.lhs.to_letters(), r.rhs.map(|w| w.to_letters())))
            .collect();
        let mut cur = w.to_letters();
        let mut steps = 0;
        loop {
            let redexes = find_redexes(&rules, &cur);
            if redexes.is_empty() {
                return ReductionOutcome { result: NormalForm::Word(Word::from_letters(&cur)), steps };
            }
            let (ri, pos) = redexes[choose(&redexes) % redexes.len()];
            steps += 1;
            match &rules[ri].1 {
                None => return ReductionOutcome { result: NormalForm::Zero, steps },
                Some(rhs) => {
                    cur.splice(pos..pos + rules[ri].0.len(), rhs.iter().copied());
                }
            }
        }
    }

    /// Rewriting with a uniformly random redex at each step.
    pub fn reduce_random<G: Rng + ?Sized>(&self, w: &Word, rng: &mut G) -> ReductionOutcome {
        self.reduce_with(w, |redexes| rng.gen_range(0..redexes.len()))
    }

    /// Every normal form reachable from `w` by some maximal rewriting
    /// sequence. Confluence means this set has exactly one element.
    pub fn reachable_normal_forms(&self, w: &Word) -> BTreeSet<NormalForm> {
        let rules: Vec<(Vec<Letter>, Option<Vec<Letter>>)> = self
            .rules()
            .into_iter()
            .map(|r| (r.lhs.to_letters(), r.rhs.map(|w| w.to_letters())))
            .collect();
        let mut memo = HashMap::new();
        reachable(&rules, w.to_letters(), &mut memo)
    }

    /// All overlaps between rule left-hand sides, each reduced both ways.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let rules: Vec<(Vec<Letter>, Option<Vec<Letter>>)> = self
            .rules()
            .into_iter()
            .map(|r| (r.lhs.to_letters(), r.rhs.map(|w| w.to_letters())))
            .collect();
        let mut pairs = Vec::new();
        let branch = |word: &[Letter], at: usize, rule: &(Vec<Letter>, Option<Vec<Letter>>)| -> NormalForm {
            match &rule.1 {
                None => NormalForm::Zero,
                Some(rhs) => {
                    let mut w = word.to_vec();
                    w.splice(at..at + rule.0.len(), rhs.iter().copied());
                    self.reduce(&Word::from_letters(&w)).result
                }
            }
        };
        for (i, r1) in rules.iter().enumerate() {
            for (j, r2) in rules.iter().enumerate() {
                let (l1, l2) = (&r1.0, &r2.0);
                // suffix of l1 equals prefix of l2
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut overlap = l1.clone();
                        overlap.extend_from_slice(&l2[k..]);
                        pairs.push(CriticalPair {
                            overlap: Word::from_letters(&overlap),
                            left: branch(&overlap, 0, r1),
                            right: branch(&overlap, l1.len() - k, r2),
                        });
                    }
                }
                // l2 strictly inside l1
                if i != j && l2.len() < l1.len() {
                    for p in 0..=l1.len() - l2.len() {
                        if l1[p..p + l2.len()] == l2[..] {
                            pairs.push(CriticalPair {
                                overlap: Word::from_letters(l1),
                                left: branch(l1, 0, r1),
                                right: branch(l1, p, r2),
                            });
                        }
                    }
                }
            }
        }
        pairs
    }
}

impl Default for RewriteSystem {
    fn default() -> Self {
        RewriteSystem::default_s()
    }
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.presentation {
            Presentation::S => write!(f, "S(n={})", self.degree),
            Presentation::R => write!(f, "R(m={})", self.degree),
        }
    }
}

type FlatRule = (Vec<Letter>, Option<Vec<Letter>>);

fn find_redexes(rules: &[FlatRule], w: &[Letter]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for pos in 0..w.len() {
        for (ri, (lhs, _)) in rules.iter().enumerate() {
            if w[pos..].starts_with(lhs) {
                out.push((ri, pos));
            }
        }
    }
    out
}

fn reachable(
    rules: &[FlatRule],
    w: Vec<Letter>,
    memo: &mut HashMap<Vec<Letter>, BTreeSet<NormalForm>>,
) -> BTreeSet<NormalForm> {
    if let Some(s) = memo.get(&w) {
        return s.clone();
    }
    let redexes = find_redexes(rules, &w);
    let mut out = BTreeSet::new();
    if redexes.is_empty() {
        out.insert(NormalForm::Word(Word::from_letters(&w)));
    }
    for (ri, pos) in redexes {
        match &rules[ri].1 {
            None => {
                out.insert(NormalForm::Zero);
            }
            Some(rhs) => {
                let mut next = w.clone();
                next.splice(pos..pos + rules[ri].0.len(), rhs.iter().copied());
                out.extend(reachable(rules, next, memo));
            }
        }
    }
    memo.insert(w, out.clone());
    out
}
