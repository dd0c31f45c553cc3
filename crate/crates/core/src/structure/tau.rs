//! The largest word `tau` of `C` and the ways it can arise.
//!
//! For `x^3 = 0` every word of `C` has the shape
//! `q^i1 x^2 q^i2 x^2 ... q^ik x^c` with `i1 >= 1`, later `it >= 2` and
//! `c` in `{1, 2}`. A pair `(w, y)` with `w != 1` and `y != 1` producing
//! `tau` must be in one of three forms:
//!
//! 1. type I without reduction, split at the end of the `r`-th `q`-group;
//! 2. type I with reduction, `w = ... q^a`, `y = x q^b ...` with
//!    `a + b - 1 = i_r`, `b >= 2`, and `b > 2` or some later `it > 2`;
//! 3. type II, `w = ... q^(i_r - 1)` and `y = x q^(i_(r+1)) ...` with every
//!    later `it = 2`, or `r = k` and `y = x`.
//!
//! Of forms 2 and 3 together at most one pair occurs.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::cset::{build_c_set, find_tau, lex_greater, CSet, OccurrenceKind};
use super::shape::{left_shape_words, right_shape_words, LeftShapeWord, RightShapeWord};
use super::types::{type_i, type_ii};
use super::{require_n3, StructureError};
use crate::field::{Field, Gf3};
use crate::par::Execution;
use crate::report::{ReportBuilder, VerificationReport};
use crate::rewrite::RewriteSystem;
use crate::word::{Letter, Word};

/// `q^i1 x^2 q^i2 x^2 ... q^ik x^c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TauForm {
    q_exps: Vec<u32>,
    tail: u32,
}

impl TauForm {
    /// Reads the exponents off `w`, or `None` if `w` does not have the shape.
    pub fn parse(w: &Word) -> Option<TauForm> {
        let blocks = w.blocks();
        if blocks.is_empty() || !blocks.len().is_multiple_of(2) {
            return None;
        }
        let k = blocks.len() / 2;
        let mut q_exps = Vec::with_capacity(k);
        for (t, pair) in blocks.chunks(2).enumerate() {
            let (qb, xb) = (pair[0], pair[1]);
            if qb.letter != Letter::Q || xb.letter != Letter::X {
                return None;
            }
            if t > 0 && qb.exp < 2 {
                return None;
            }
            let last = t + 1 == k;
            if (!last && xb.exp != 2) || (last && !(1..=2).contains(&xb.exp)) {
                return None;
            }
            q_exps.push(qb.exp);
        }
        Some(TauForm { q_exps, tail: blocks[blocks.len() - 1].exp })
    }

    /// Number of `q`-groups.
    pub fn groups(&self) -> usize {
        self.q_exps.len()
    }

    /// Exponent of the `r`-th `q`-group, counting from 1.
    pub fn q_exp(&self, r: usize) -> u32 {
        self.q_exps[r - 1]
    }

    pub fn q_exps(&self) -> &[u32] {
        &self.q_exps
    }

    pub fn tail(&self) -> u32 {
        self.tail
    }

    pub fn word(&self) -> Word {
        self.suffix_from(1)
    }

    /// `q^i1 x^2 ... q^i(r-1) x^2`; for `r = k + 1` the whole word.
    fn prefix_before(&self, r: usize) -> Word {
        let mut w = Word::one();
        for t in 1..r {
            w.push(Letter::Q, self.q_exp(t));
            w.push(Letter::X, if t == self.groups() { self.tail } else { 2 });
        }
        w
    }

    /// `q^ir x^2 ... q^ik x^c`; empty for `r = k + 1`.
    fn suffix_from(&self, r: usize) -> Word {
        let mut w = Word::one();
        for t in r..=self.groups() {
            w.push(Letter::Q, self.q_exp(t));
            w.push(Letter::X, if t == self.groups() { self.tail } else { 2 });
        }
        w
    }

    /// `x^2 q^i(r+1) ... x^c`, or `x^c` when `r = k`.
    fn after_group(&self, r: usize) -> Word {
        let x = if r == self.groups() { self.tail } else { 2 };
        Word::power(Letter::X, x).concat(&self.suffix_from(r + 1))
    }

    fn later_groups_exceed_two(&self, r: usize) -> bool {
        self.q_exps[r..].iter().any(|&e| e > 2)
    }
}

impl fmt::Display for TauForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word().fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Form {
    One { r: usize },
    Two { r: usize, a: u32, b: u32 },
    /// `r` equal to the number of groups is the `y = x` instance.
    Three { r: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FormKind {
    One,
    Two,
    Three,
}

impl Form {
    pub fn kind(&self) -> FormKind {
        match self {
            Form::One { .. } => FormKind::One,
            Form::Two { .. } => FormKind::Two,
            Form::Three { .. } => FormKind::Three,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauOccurrence {
    pub left: Word,
    pub right: Word,
    pub kind: OccurrenceKind,
    pub form: Form,
}

/// A pair producing `tau` that fits none of the forms, or a Form 1 pair
/// whose closing comparison fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauViolation {
    pub left: Word,
    pub right: Word,
    pub kind: OccurrenceKind,
    pub reduced: bool,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauClassification {
    pub tau: Word,
    pub form: TauForm,
    pub occurrences: Vec<TauOccurrence>,
    pub violations: Vec<TauViolation>,
    /// Occurrences from pairs with `w = 1` or `y = 1`, not classified.
    pub excluded: usize,
}

impl TauClassification {
    pub fn count(&self, kind: FormKind) -> usize {
        self.occurrences.iter().filter(|o| o.form.kind() == kind).count()
    }

    /// At most one occurrence of Form 2 or Form 3.
    pub fn is_unique(&self) -> bool {
        self.count(FormKind::Two) + self.count(FormKind::Three) <= 1
    }
}

fn classify_pair(form: &TauForm, w: &Word, y: &Word, kind: OccurrenceKind, reduced: bool) -> Result<Form, String> {
    let k = form.groups();
    let r = w.blocks().iter().filter(|b| b.letter == Letter::Q).count();
    if r == 0 || r > k || w.last_letter() != Some(Letter::Q) {
        return Err(format!("left word has {r} q-groups and cannot end at a q-group of tau"));
    }
    let last = w.last_block().expect("w != 1").exp;
    let head = form.prefix_before(r);
    match (kind, reduced) {
        (OccurrenceKind::TypeI, false) => {
            if *w != head.concat(&Word::power(Letter::Q, form.q_exp(r))) || *y != form.after_group(r) {
                return Err(format!("not a split of tau after q-group {r}"));
            }
            Ok(Form::One { r })
        }
        (OccurrenceKind::TypeI, true) => {
            let a = last;
            if a > form.q_exp(r) || *w != head.concat(&Word::power(Letter::Q, a)) {
                return Err(format!("left word is not a prefix of tau ending inside q-group {r}"));
            }
            let b = form.q_exp(r) - a + 1;
            let expected = Word::from_blocks([(Letter::X, 1), (Letter::Q, b)]).concat(&form.after_group(r));
            if *y != expected {
                return Err(format!("right word should be {expected} for a = {a}"));
            }
            if b < 2 {
                return Err(format!("b = {b} < 2"));
            }
            if !(b > 2 || form.later_groups_exceed_two(r)) {
                return Err(format!("b = {b} and no later q-group exceeds 2"));
            }
            Ok(Form::Two { r, a, b })
        }
        (OccurrenceKind::TypeII, _) => {
            let ir = form.q_exp(r);
            if ir < 2 || *w != head.concat(&Word::power(Letter::Q, ir - 1)) {
                return Err(format!("left word should end in q^{} after the first {} groups", ir.saturating_sub(1), r - 1));
            }
            let expected = if r == k {
                Word::letter(Letter::X)
            } else {
                Word::letter(Letter::X).concat(&form.suffix_from(r + 1))
            };
            if *y != expected {
                return Err(format!("right word should be {expected}"));
            }
            if form.later_groups_exceed_two(r) {
                return Err(format!("a q-group after group {r} exceeds 2"));
            }
            Ok(Form::Three { r })
        }
        (OccurrenceKind::Boundary, _) => Err("boundary term equals tau".to_string()),
    }
}

type Terms = Vec<(Gf3, Word)>;

fn unit_family(left: &[Word], right: &[Word]) -> (Terms, Terms) {
    let one = |ws: &[Word]| ws.iter().map(|w| (Gf3::from_i64(1), w.clone())).collect::<Vec<_>>();
    (one(left), one(right))
}

fn classify_in<F: Field>(c: &CSet<F>, tau: &Word, sys: RewriteSystem) -> Result<TauClassification, StructureError> {
    let actual = find_tau(c)?;
    if actual != *tau {
        return Err(StructureError::TauNotMaximal { given: tau.clone(), actual });
    }
    let form = TauForm::parse(tau).ok_or_else(|| StructureError::BadTau(tau.clone()))?;
    let mut out = TauClassification {
        tau: tau.clone(),
        form: form.clone(),
        occurrences: Vec::new(),
        violations: Vec::new(),
        excluded: 0,
    };
    for o in c.occurrences_of(tau) {
        if o.left.is_one() || o.right.is_one() {
            out.excluded += 1;
            continue;
        }
        match classify_pair(&form, &o.left, &o.right, o.kind, o.reduced) {
            Ok(f) => {
                if let Form::One { .. } = f {
                    let wqx = type_ii(&o.left, &Word::one(), sys);
                    if !wqx.word().is_some_and(|v| lex_greater(v, tau)) {
                        out.violations.push(TauViolation {
                            left: o.left.clone(),
                            right: o.right.clone(),
                            kind: o.kind,
                            reduced: o.reduced,
                            reason: format!("w q x = {} is not above tau", wqx.result),
                        });
                    }
                }
                out.occurrences.push(TauOccurrence { left: o.left.clone(), right: o.right.clone(), kind: o.kind, form: f });
            }
            Err(reason) => out.violations.push(TauViolation {
                left: o.left.clone(),
                right: o.right.clone(),
                kind: o.kind,
                reduced: o.reduced,
                reason,
            }),
        }
    }
    Ok(out)
}

/// Classifies every pair of `left x right` whose type I or type II word is
/// `tau`. `tau` must be the largest word of the C-set of the family.
pub fn classify_tau_occurrences(
    left: &[LeftShapeWord],
    right: &[RightShapeWord],
    tau: &Word,
    sys: RewriteSystem,
) -> Result<TauClassification, StructureError> {
    require_n3("tau classification", sys)?;
    let lw: Vec<Word> = left.iter().map(|w| w.word().clone()).collect();
    let rw: Vec<Word> = right.iter().map(|w| w.word().clone()).collect();
    let (l, r) = unit_family(&lw, &rw);
    let c = build_c_set(&l, &r, sys)?;
    classify_in(&c, tau, sys)
}

fn family_json(left: &[Word], right: &[Word]) -> Value {
    let s = |ws: &[Word]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>();
    json!({ "L": s(left), "R": s(right) })
}

/// Runs the classification on one family and reports whether `tau` is
/// reached at most once through Form 2 or Form 3.
pub fn check_tau_uniqueness(
    left: &[LeftShapeWord],
    right: &[RightShapeWord],
    sys: RewriteSystem,
) -> Result<VerificationReport, StructureError> {
    require_n3("tau-unique", sys)?;
    let lw: Vec<Word> = left.iter().map(|w| w.word().clone()).collect();
    let rw: Vec<Word> = right.iter().map(|w| w.word().clone()).collect();
    let report = ReportBuilder::new("tau-unique").param("family", family_json(&lw, &rw));
    let outcome = analyze_family(&lw, &rw, None, sys)?;
    let failure = outcome.failure(Failure::Uniqueness).or_else(|| outcome.failure(Failure::Forms));
    Ok(report.verdict(failure.map(|f| json!({ "family": family_json(&lw, &rw), "detail": f })), 1))
}

#[derive(Clone, Copy)]
enum Failure {
    Forms,
    Uniqueness,
}

struct FamilyOutcome {
    classification: Option<TauClassification>,
    bad_tau: Option<Word>,
    /// `Some(false)` when `qx` cancels without `q` in `L` and `x` in `R`.
    qx_necessity: Option<bool>,
}

impl FamilyOutcome {
    fn failure(&self, which: Failure) -> Option<Value> {
        match which {
            Failure::Forms => {
                if self.qx_necessity == Some(false) {
                    return Some(json!({ "reason": "qx cancels but q is not in L or x is not in R" }));
                }
                if let Some(t) = &self.bad_tau {
                    return Some(json!({ "tau": t, "reason": "tau does not have the q^i1 x^2 ... x^c shape" }));
                }
                let c = self.classification.as_ref()?;
                c.violations.first().map(|v| json!({ "tau": c.tau, "violation": v }))
            }
            Failure::Uniqueness => {
                let c = self.classification.as_ref()?;
                (!c.is_unique()).then(|| json!({ "tau": c.tau, "occurrences": c.occurrences }))
            }
        }
    }
}

fn analyze_family(
    left: &[Word],
    right: &[Word],
    coefficients: Option<(&[Gf3], &[Gf3])>,
    sys: RewriteSystem,
) -> Result<FamilyOutcome, StructureError> {
    let (mut l, mut r) = unit_family(left, right);
    if let Some((a, b)) = coefficients {
        for (t, c) in l.iter_mut().zip(a) {
            t.0 = *c;
        }
        for (t, c) in r.iter_mut().zip(b) {
            t.0 = *c;
        }
    }
    let c = build_c_set(&l, &r, sys)?;
    let mut bad_tau = None;
    let classification = match find_tau(&c) {
        Ok(tau) if TauForm::parse(&tau).is_none() => {
            bad_tau = Some(tau);
            None
        }
        Ok(tau) => Some(classify_in(&c, &tau, sys)?),
        Err(StructureError::EmptyCSet) => None,
        Err(e) => return Err(e),
    };
    let qx = Word::from_letters(&[Letter::Q, Letter::X]);
    let has = |ws: &[Word], w: &Word| ws.contains(w);
    let qx_necessity = (has(left, &Word::one()) && has(right, &Word::one()) && c.collected_coefficient(&qx).is_zero())
        .then(|| has(left, &Word::letter(Letter::Q)) && has(right, &Word::letter(Letter::X)));
    Ok(FamilyOutcome { classification, bad_tau, qx_necessity })
}

/// Family enumeration for the `tau` lemmas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TauHarness {
    /// Every pair of subsets of shape words up to this length.
    pub exhaustive_max_len: usize,
    pub random_trials: usize,
    /// Shape words up to this length feed the random families.
    pub random_max_len: usize,
    pub seed: u64,
}

impl Default for TauHarness {
    fn default() -> Self {
        TauHarness { exhaustive_max_len: 3, random_trials: 10_000, random_max_len: 6, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TauHarnessSummary {
    pub families: u64,
    pub empty_families: u64,
    pub form_one: u64,
    pub form_two: u64,
    pub form_three: u64,
    pub excluded: u64,
    pub qx_checks: u64,
    pub form_failures: u64,
    pub uniqueness_failures: u64,
    pub first_form_failure: Option<Value>,
    pub first_uniqueness_failure: Option<Value>,
}

impl TauHarnessSummary {
    fn absorb(&mut self, left: &[Word], right: &[Word], o: FamilyOutcome) {
        self.families += 1;
        if o.qx_necessity.is_some() {
            self.qx_checks += 1;
        }
        if let Some(c) = &o.classification {
            self.form_one += c.count(FormKind::One) as u64;
            self.form_two += c.count(FormKind::Two) as u64;
            self.form_three += c.count(FormKind::Three) as u64;
            self.excluded += c.excluded as u64;
        } else if o.bad_tau.is_none() {
            self.empty_families += 1;
        }
        if let Some(f) = o.failure(Failure::Forms) {
            self.form_failures += 1;
            self.first_form_failure.get_or_insert_with(|| json!({ "family": family_json(left, right), "detail": f }));
        }
        if let Some(f) = o.failure(Failure::Uniqueness) {
            self.uniqueness_failures += 1;
            self.first_uniqueness_failure
                .get_or_insert_with(|| json!({ "family": family_json(left, right), "detail": f }));
        }
    }
}

type Family = (Vec<Word>, Vec<Word>, Option<(Vec<Gf3>, Vec<Gf3>)>);

fn subset(pool: &[Word], mask: usize) -> Vec<Word> {
    pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w.clone()).collect()
}

fn random_family(pool_l: &[Word], pool_r: &[Word], seed: u64, trial: usize) -> Family {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let pick = |pool: &[Word], rng: &mut ChaCha8Rng| -> Vec<Word> {
        let k = rng.gen_range(1..=pool.len().min(6));
        let mut idx = sample(rng, pool.len(), k).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| pool[i].clone()).collect()
    };
    let mut left = pick(pool_l, &mut rng);
    let mut right = pick(pool_r, &mut rng);
    if rng.gen_bool(0.5) {
        for (ws, w) in [(&mut left, Word::one()), (&mut right, Word::one())] {
            if !ws.contains(&w) {
                ws.insert(0, w);
            }
        }
    }
    let a = (0..left.len()).map(|_| Gf3::random_nonzero(&mut rng)).collect();
    let b = (0..right.len()).map(|_| Gf3::random_nonzero(&mut rng)).collect();
    (left, right, Some((a, b)))
}

/// Families analysed per parallel batch.
const CHUNK: usize = 512;

/// Runs the classification over every family of the harness.
pub fn run_tau_harness(
    sys: RewriteSystem,
    harness: &TauHarness,
    exec: Execution,
) -> Result<TauHarnessSummary, StructureError> {
    require_n3("tau harness", sys)?;
    let small_l: Vec<Word> = left_shape_words(sys, harness.exhaustive_max_len).into_iter().map(LeftShapeWord::into_word).collect();
    let small_r: Vec<Word> = right_shape_words(sys, harness.exhaustive_max_len).into_iter().map(RightShapeWord::into_word).collect();
    let big_l: Vec<Word> = left_shape_words(sys, harness.random_max_len).into_iter().map(LeftShapeWord::into_word).collect();
    let big_r: Vec<Word> = right_shape_words(sys, harness.random_max_len).into_iter().map(RightShapeWord::into_word).collect();
    if small_l.len() + small_r.len() > 24 {
        let candidates = 1u128 << (small_l.len() + small_r.len());
        return Err(StructureError::SearchTooLarge { candidates, limit: 1 << 24 });
    }
    let exhaustive = (1usize << small_l.len()) * (1usize << small_r.len());
    let total = exhaustive + harness.random_trials;
    let mut summary = TauHarnessSummary::default();
    let mut start = 0;
    while start < total {
        let len = CHUNK.min(total - start);
        let outcomes = exec.map_range(len, |k| -> Result<(Vec<Word>, Vec<Word>, FamilyOutcome), StructureError> {
            let i = start + k;
            let (left, right, coefficients) = if i < exhaustive {
                let (ml, mr) = (i >> small_r.len(), i & ((1 << small_r.len()) - 1));
                (subset(&small_l, ml), subset(&small_r, mr), None)
            } else {
                random_family(&big_l, &big_r, harness.seed, i - exhaustive)
            };
            let o = analyze_family(&left, &right, coefficients.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice())), sys)?;
            Ok((left, right, o))
        });
        for r in outcomes {
            let (left, right, o) = r?;
            summary.absorb(&left, &right, o);
        }
        start += len;
    }
    Ok(summary)
}

fn harness_report(check: &'static str, sys: RewriteSystem, harness: &TauHarness) -> ReportBuilder {
    ReportBuilder::new(check)
        .param("n", sys.degree())
        .param("exhaustive_max_len", harness.exhaustive_max_len as u64)
        .param("random_trials", harness.random_trials as u64)
        .param("random_max_len", harness.random_max_len as u64)
        .param("seed", harness.seed)
}

/// Every occurrence of `tau` fits one of the three forms, Form 1
/// occurrences pass the closing comparison, and `qx` only cancels when
/// `q` is in `L` and `x` is in `R`.
pub fn check_tau_forms(
    sys: RewriteSystem,
    harness: &TauHarness,
    exec: Execution,
) -> Result<(VerificationReport, TauHarnessSummary), StructureError> {
    require_n3("tau-forms", sys)?;
    let report = harness_report("tau-forms", sys, harness);
    let summary = run_tau_harness(sys, harness, exec)?;
    Ok((report.verdict(summary.first_form_failure.clone(), summary.families), summary))
}

/// At most one occurrence of `tau` in Form 2 or Form 3, on every family
/// of the harness.
pub fn check_tau_unique_families(
    sys: RewriteSystem,
    harness: &TauHarness,
    exec: Execution,
) -> Result<(VerificationReport, TauHarnessSummary), StructureError> {
    require_n3("tau-unique", sys)?;
    let report = harness_report("tau-unique", sys, harness);
    let summary = run_tau_harness(sys, harness, exec)?;
    Ok((report.verdict(summary.first_uniqueness_failure.clone(), summary.families), summary))
}

/// A smallest single-pair family in which `tau` occurs in the given form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormWitness {
    pub left: Word,
    pub right: Word,
    pub tau: Word,
    pub occurrence: TauOccurrence,
}

/// Scans pairs `(w, y)` of shape words of length at most `max_len`, by
/// total length, for a family `L = {w}`, `R = {y}` showing `kind`.
pub fn find_form_witness(
    kind: FormKind,
    max_len: usize,
    sys: RewriteSystem,
) -> Result<Option<FormWitness>, StructureError> {
    require_n3("form witness", sys)?;
    let left = left_shape_words(sys, max_len);
    let right = right_shape_words(sys, max_len);
    let mut pairs: Vec<(&Word, &Word)> = left
        .iter()
        .filter(|w| !w.word().is_one())
        .flat_map(|w| right.iter().filter(|y| !y.word().is_one()).map(move |y| (w.word(), y.word())))
        .collect();
    pairs.sort_by(|a, b| (a.0.len() + a.1.len(), a.0, a.1).cmp(&(b.0.len() + b.1.len(), b.0, b.1)));
    for (w, y) in pairs {
        let (l, r) = unit_family(std::slice::from_ref(w), std::slice::from_ref(y));
        let c = build_c_set(&l, &r, sys)?;
        let tau = find_tau(&c)?;
        if type_i(w, y, sys).word() != Some(&tau) && type_ii(w, y, sys).word() != Some(&tau) {
            continue;
        }
        let cl = classify_in(&c, &tau, sys)?;
        if let Some(o) = cl.occurrences.iter().find(|o| o.form.kind() == kind) {
            return Ok(Some(FormWitness { left: w.clone(), right: y.clone(), tau, occurrence: o.clone() }));
        }
    }
    Ok(None)
}
