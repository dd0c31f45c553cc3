mod common;

use std::cmp::Ordering;

use common::{all_strings, brute_force_basis, flatten, s3, s_reduce, unflatten};
use nilreg_core::{lex_compare, NormalForm, RewriteSystem, Word};
use proptest::prelude::*;

fn sq_string(max: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('x'), Just('q')], 0..=max).prop_map(|v| v.into_iter().collect())
}

fn normal_word(max: usize) -> impl Strategy<Value = Word> {
    sq_string(max).prop_filter_map("zero", |s| s_reduce(&s, 3).map(|r| unflatten(&r)))
}

#[test]
fn spec_reduction_examples() {
    let s = s3();
    let cases = [
        ("q^2 x q x q^3 x^2 q", Some("q^4 x^2 q")),
        ("x^3", None),
        ("x q x", Some("x")),
        ("q x q", Some("q")),
        ("1", Some("1")),
        ("x^2 q x^2", None),
    ];
    for (src, expected) in cases {
        let got = s.reduce(&src.parse().unwrap()).result;
        let want = expected.map(|e| NormalForm::Word(e.parse().unwrap())).unwrap_or(NormalForm::Zero);
        assert_eq!(got, want, "{src}");
    }
}

#[test]
fn critical_pair_examples() {
    let s = s3();
    let pairs = s.critical_pairs();
    let find = |w: &str| pairs.iter().find(|p| p.overlap == w.parse::<Word>().unwrap()).unwrap();
    assert_eq!(find("x q x q").left.word().map(flatten).as_deref(), Some("xq"));
    assert_eq!(find("q x q x").left.word().map(flatten).as_deref(), Some("qx"));
    let p = find("x q x^3");
    assert!(p.is_joinable());
    assert!(pairs.iter().all(|p| p.is_joinable()));
}

#[test]
fn basis_counts_match_brute_force() {
    for n in 2..=5u32 {
        let s = RewriteSystem::s(n).unwrap();
        for len in 0..=8 {
            let ours: Vec<String> = s.enumerate_basis(len).iter().map(flatten).collect();
            let oracle = brute_force_basis(n as usize, len);
            assert_eq!(ours.len(), oracle.len(), "n = {n}, L = {len}");
            assert!(ours.iter().all(|w| oracle.contains(w)));
        }
    }
    let s = s3();
    assert_eq!(s.enumerate_basis(0), vec![Word::one()]);
    assert_eq!(s.enumerate_basis(2).len(), 7);
    assert_eq!(s.enumerate_basis(3).len(), 12);
}

#[test]
fn basis_predicate_is_fixpoint_test() {
    for n in 2..=4u32 {
        let s = RewriteSystem::s(n).unwrap();
        for w in all_strings(['x', 'q'], 9) {
            let word = unflatten(&w);
            let fixed = s_reduce(&w, n as usize).as_deref() == Some(w.as_str());
            assert_eq!(s.is_basis_word(&word), fixed, "{w}");
        }
    }
}

proptest! {
    #[test]
    fn reduce_matches_string_oracle(w in sq_string(24), n in 2usize..6) {
        let s = RewriteSystem::s(n as u32).unwrap();
        let ours = s.reduce(&unflatten(&w)).result.word().map(flatten);
        prop_assert_eq!(ours, s_reduce(&w, n));
    }

    #[test]
    fn reduce_is_idempotent(w in sq_string(24)) {
        let s = s3();
        let first = s.reduce(&unflatten(&w)).result;
        if let Some(v) = first.word() {
            prop_assert_eq!(s.reduce(v).result, first.clone());
            prop_assert_eq!(s.reduce(v).steps, 0);
        }
    }

    #[test]
    fn concat_matches_flat_product(u in normal_word(12), v in normal_word(12)) {
        let s = s3();
        prop_assert_eq!(s.concat_reduce(&u, &v).result, s.reduce(&u.concat(&v)).result);
    }

    #[test]
    fn interface_drops_at_most_one_pair(u in normal_word(12), v in normal_word(12)) {
        let s = s3();
        if let Some(w) = s.concat_reduce(&u, &v).result.word() {
            let (fu, fv, fw) = (flatten(&u), flatten(&v), flatten(w));
            let joined = format!("{fu}{fv}");
            if fw != joined {
                prop_assert_eq!(fw.len() + 2, joined.len());
                let k = fu.len();
                let candidates = [
                    format!("{}{}", &fu[..k.saturating_sub(2)], fv),
                    format!("{}{}", &fu[..k.saturating_sub(1)], &fv[1.min(fv.len())..]),
                    format!("{}{}", fu, &fv[2.min(fv.len())..]),
                ];
                prop_assert!(candidates.contains(&fw), "{} {} -> {}", fu, fv, fw);
            }
        }
    }

    #[test]
    fn random_strategies_agree(w in sq_string(14), seed in any::<u64>()) {
        use rand::SeedableRng;
        let s = s3();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let word = unflatten(&w);
        prop_assert_eq!(s.reduce_random(&word, &mut rng).result, s.reduce(&word).result);
    }

    #[test]
    fn lex_is_a_total_order(a in sq_string(8), b in sq_string(8), c in sq_string(8)) {
        let (u, v, w) = (unflatten(&a), unflatten(&b), unflatten(&c));
        prop_assert_eq!(lex_compare(&u, &v), lex_compare(&v, &u).reverse());
        prop_assert_eq!(lex_compare(&u, &v) == Ordering::Equal, u == v);
        if lex_compare(&u, &v) != Ordering::Greater && lex_compare(&v, &w) != Ordering::Greater {
            prop_assert_ne!(lex_compare(&u, &w), Ordering::Greater);
        }
        // q > x on letters, and a proper prefix comes first
        let expected = {
            let key = |s: &str| s.chars().map(|ch| if ch == 'q' { 1u8 } else { 0 }).collect::<Vec<_>>();
            key(&a).cmp(&key(&b))
        };
        prop_assert_eq!(lex_compare(&u, &v), expected);
    }

    #[test]
    fn display_parse_roundtrip(w in sq_string(16)) {
        let word = unflatten(&w);
        prop_assert_eq!(word.to_string().parse::<Word>().unwrap(), word.clone());
        prop_assert_eq!(word.len(), w.len());
    }
}
