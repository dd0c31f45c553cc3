//! Element identities: regularity, the two full-idempotent sums, and
//! bounded primeness.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{require_s, StructureError};
use crate::element::AlgebraElement;
use crate::field::{Field, Rational};
use crate::par::Execution;
use crate::report::{ReportBuilder, VerificationReport};
use crate::rewrite::RewriteSystem;

type E = AlgebraElement<Rational>;

fn mismatch(name: &str, lhs: &E, rhs: &E) -> Option<Value> {
    (lhs != rhs).then(|| json!({ "identity": name, "lhs": lhs.to_string(), "rhs": rhs.to_string() }))
}

/// `xqx = x`, `qxq = q`, `x^n = 0`, `x^(n-1) != 0`, and for a few inner
/// inverses `b = q + (1 - qx) z (1 - xq)` of `x`, that `bxb` is a
/// generalised inverse.
pub fn check_regularity_identities(sys: RewriteSystem) -> Result<VerificationReport, StructureError> {
    require_s("regularity", sys)?;
    let report = ReportBuilder::new("regularity").param("n", sys.degree());
    let n = sys.degree();
    let (x, q) = (E::x(sys), E::q(sys));
    let one = E::one(sys);
    let zero = E::zero(sys);
    let mut checks: Vec<Option<Value>> = vec![
        mismatch("xqx = x", &(&(&x * &q) * &x), &x),
        mismatch("qxq = q", &(&(&q * &x) * &q), &q),
        mismatch("x^n = 0", &x.pow(n), &zero),
        x.pow(n - 1).is_zero().then(|| json!({ "identity": "x^(n-1) != 0", "lhs": "0" })),
    ];
    let g = &(&q * &x) * &q;
    checks.push(mismatch("(qxq) x (qxq) = qxq", &(&(&g * &x) * &g), &g));
    let f = &one - &(&q * &x);
    let e = &one - &(&x * &q);
    for z in ["1", "x", "q", "x q^2", "q^2 x^2 q"] {
        let z = E::parse(z, sys).expect("literal");
        let b = &q + &(&(&f * &z) * &e);
        checks.push(mismatch("x b x = x", &(&(&x * &b) * &x), &x));
        let g = &(&b * &x) * &b;
        checks.push(mismatch("x (bxb) x = x", &(&(&x * &g) * &x), &x));
        checks.push(mismatch("(bxb) x (bxb) = bxb", &(&(&g * &x) * &g), &g));
    }
    let total = checks.len() as u64;
    Ok(report.verdict(checks.into_iter().flatten().next(), total))
}

/// `sum_k x^k (1 - xq) q^k` and `sum_k q^k (1 - qx) x^k` for `k < n`.
///
/// Both telescope to `1 - x^n q^n = 1` and `1 - q^n x^n`, which is `1`
/// because `x^n = 0`.
pub fn separativity_sums(sys: RewriteSystem) -> (E, E) {
    let (x, q) = (E::x(sys), E::q(sys));
    let one = E::one(sys);
    let e = &one - &(&x * &q);
    let f = &one - &(&q * &x);
    let mut left = E::zero(sys);
    let mut right = E::zero(sys);
    for k in 0..sys.degree() {
        left = &left + &(&(&x.pow(k) * &e) * &q.pow(k));
        right = &right + &(&(&q.pow(k) * &f) * &x.pow(k));
    }
    (left, right)
}

pub fn check_separativity_identities(sys: RewriteSystem) -> Result<VerificationReport, StructureError> {
    require_s("separativity", sys)?;
    let report = ReportBuilder::new("separativity").param("n", sys.degree());
    let (left, right) = separativity_sums(sys);
    let one = E::one(sys);
    let failure = mismatch("sum x^k (1 - xq) q^k = 1", &left, &one)
        .or_else(|| mismatch("sum q^k (1 - qx) x^k = 1", &right, &one));
    Ok(report.verdict(failure, 2))
}

fn annihilated_by_both(z: &E, sys: RewriteSystem) -> Option<&'static str> {
    let (x, q) = (E::x(sys), E::q(sys));
    if (&q * z).is_zero() && (&x * z).is_zero() {
        Some("qz = xz = 0")
    } else if (z * &q).is_zero() && (z * &x).is_zero() {
        Some("zq = zx = 0")
    } else {
        None
    }
}

/// No nonzero `z` of bounded degree has `qz = xz = 0` or `zq = zx = 0`.
///
/// Every single basis word up to `max_len` is checked, then
/// `random_trials` seeded combinations of two to four basis words.
pub fn check_primeness_bounded(
    sys: RewriteSystem,
    max_len: usize,
    random_trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<VerificationReport, StructureError> {
    require_s("primeness", sys)?;
    if sys.degree() < 3 {
        return Err(StructureError::UnsupportedDegree { check: "primeness", requirement: ">= 3", n: sys.degree() });
    }
    let report = ReportBuilder::new("primeness")
        .param("n", sys.degree())
        .param("max_len", max_len as u64)
        .param("random_trials", random_trials as u64)
        .param("seed", seed);
    let basis = sys.enumerate_basis(max_len);
    let single = exec.map(&basis, |w| {
        let z = E::word(w, sys);
        annihilated_by_both(&z, sys).map(|why| json!({ "z": z.to_string(), "reason": why }))
    });
    let multi = exec.map_range(random_trials, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (t as u64).wrapping_mul(0xA076_1D64_78BD_642F));
        let k = rng.gen_range(2..=4.min(basis.len()).max(2));
        let idx = sample(&mut rng, basis.len(), k.min(basis.len()));
        let z = E::from_terms(idx.iter().map(|i| (Rational::random_nonzero(&mut rng), basis[i].clone())), sys);
        if z.is_zero() {
            return None;
        }
        annihilated_by_both(&z, sys).map(|why| json!({ "z": z.to_string(), "reason": why }))
    });
    let failure = single.into_iter().chain(multi).flatten().next();
    Ok(report.verdict(failure, (basis.len() + random_trials) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Letter, Word};

    #[test]
    fn identities_hold() {
        for n in [2, 3, 4, 5] {
            let s = RewriteSystem::s(n).unwrap();
            assert!(check_regularity_identities(s).unwrap().is_success());
            assert!(check_separativity_identities(s).unwrap().is_success());
        }
        assert!(check_regularity_identities(RewriteSystem::r(2).unwrap()).is_err());
    }

    #[test]
    fn separativity_display_at_three() {
        let s = RewriteSystem::default_s();
        let e = |src: &str| E::parse(src, s).unwrap();
        let (x, q) = (E::x(s), E::q(s));
        let left = &(&e("1 - x q") + &(&(&x * &e("1 - x q")) * &q)) + &(&(&x.pow(2) * &e("1 - x q")) * &q.pow(2));
        assert_eq!(left, E::one(s));
        assert_eq!(separativity_sums(s).0, left);
        // sign slip in the middle term
        let wrong = &(&e("1 - x q") - &(&(&x * &e("1 - x q")) * &q)) + &(&(&x.pow(2) * &e("1 - x q")) * &q.pow(2));
        assert_ne!(wrong, E::one(s));
    }

    #[test]
    fn primeness_small() {
        let s = RewriteSystem::default_s();
        let r = check_primeness_bounded(s, 5, 200, 1, Execution::Sequential).unwrap();
        assert!(r.is_success(), "{r}");
        assert!(check_primeness_bounded(RewriteSystem::s(2).unwrap(), 3, 0, 0, Execution::Sequential).is_err());
        let x2 = E::word(&Word::power(Letter::X, 2), s);
        assert!((&E::x(s) * &x2).is_zero());
        assert!(!(&E::q(s) * &x2).is_zero());
    }
}
