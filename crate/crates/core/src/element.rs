//! Finite linear combinations of normal words with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::field::{split_sign, Field};
use crate::parse::{ParseError, ParseErrorKind, Parser};
use crate::rewrite::{Presentation, RewriteSystem};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("presentation mismatch: {left} vs {right}")]
    PresentationMismatch { left: RewriteSystem, right: RewriteSystem },
    #[error("{which} idempotent argument is not idempotent")]
    NotIdempotent { which: &'static str },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid element JSON: {0}")]
    Json(String),
}

/// An element of `S` (or of `R`), stored as its normal form.
///
/// Every key of the term map is a normal word of the attached rewrite
/// system and no stored coefficient is zero; the zero element has an
/// empty map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement<F: Field> {
    terms: BTreeMap<Word, F>,
    sys: RewriteSystem,
}

/// Element of the truncated free algebra `F<a, b | a^m = 0>`.
pub type FreeAlgElement<F> = AlgebraElement<F>;

impl<F: Field> AlgebraElement<F> {
    pub fn zero(sys: RewriteSystem) -> Self {
        AlgebraElement { terms: BTreeMap::new(), sys }
    }

    pub fn one(sys: RewriteSystem) -> Self {
        Self::scalar(F::one(), sys)
    }

    pub fn scalar(c: F, sys: RewriteSystem) -> Self {
        Self::monomial(c, &Word::one(), sys)
    }

    /// The image of an arbitrary word, reduced to normal form.
    pub fn word(w: &Word, sys: RewriteSystem) -> Self {
        Self::monomial(F::one(), w, sys)
    }

    pub fn letter(l: Letter, sys: RewriteSystem) -> Self {
        Self::word(&Word::letter(l), sys)
    }

    pub fn monomial(c: F, w: &Word, sys: RewriteSystem) -> Self {
        let mut e = Self::zero(sys);
        if let Some(nf) = sys.reduce(w).result.into_word() {
            e.add_term(nf, c);
        }
        e
    }

    /// Sum of `c * w` over arbitrary (not necessarily normal) words.
    pub fn from_terms<I: IntoIterator<Item = (F, Word)>>(terms: I, sys: RewriteSystem) -> Self {
        let mut e = Self::zero(sys);
        for (c, w) in terms {
            if let Some(nf) = sys.reduce(&w).result.into_word() {
                e.add_term(nf, c);
            }
        }
        e
    }

    fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn system(&self) -> RewriteSystem {
        self.sys
    }

    /// Terms in (length, lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the longest support word, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// The largest term in (length, lex) order.
    pub fn leading_term(&self) -> Option<(&Word, &F)> {
        self.terms.iter().next_back()
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.sys == other.sys {
            Ok(())
        } else {
            Err(AlgebraError::PresentationMismatch { left: self.sys, right: other.sys })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Bilinear extension of the reduced word product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.sys);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(w) = self.sys.concat_reduce(u, v).result.into_word() {
                    out.add_term(w, a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.sys);
        if c.is_zero() {
            return out;
        }
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.sys);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Equality of normal forms; elements of different presentations are
    /// never equal.
    pub fn equals(&self, other: &Self) -> bool {
        self == other
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    /// `left * self * right` for idempotents `left` and `right`.
    pub fn corner(&self, left: &Self, right: &Self) -> Result<Self, AlgebraError> {
        self.check_same(left)?;
        self.check_same(right)?;
        if !left.is_idempotent() {
            return Err(AlgebraError::NotIdempotent { which: "left" });
        }
        if !right.is_idempotent() {
            return Err(AlgebraError::NotIdempotent { which: "right" });
        }
        left.checked_mul(self)?.checked_mul(right)
    }

    /// Parses `<coef>? <word> (('+'|'-') <coef>? <word>)*`.
    ///
    /// Coefficients are integers or fractions `n/d`; a bare coefficient is
    /// a multiple of `1`. Words are reduced on the way in.
    pub fn parse(src: &str, sys: RewriteSystem) -> Result<Self, AlgebraError> {
        let mut p = Parser::new(src);
        let e = Self::parse_with(&mut p, sys)?;
        p.expect_end()?;
        Ok(e)
    }

    pub(crate) fn parse_with(p: &mut Parser<'_>, sys: RewriteSystem) -> Result<Self, ParseError> {
        let alphabet = sys.alphabet();
        let mut out = Self::zero(sys);
        let mut first = true;
        loop {
            let negative = if p.eat('-') {
                true
            } else if !first && p.eat('+') {
                false
            } else if first {
                p.eat('+');
                false
            } else {
                break;
            };
            p.skip_ws();
            let at = p.position();
            let coef = match p.number()? {
                Some((num, den)) => {
                    F::from_fraction(&num, &den).ok_or_else(|| p.error_at(at, ParseErrorKind::ZeroDenominator))?
                }
                None => F::one(),
            };
            let had_number = p.position() != at;
            let word = match p.word(&alphabet)? {
                Some(w) => w,
                None if had_number => Word::one(),
                None => {
                    return Err(match p.peek() {
                        Some(c) => p.error_here(ParseErrorKind::UnexpectedChar(c)),
                        None if first => p.error_here(ParseErrorKind::Empty),
                        None => p.error_here(ParseErrorKind::UnexpectedEnd),
                    })
                }
            };
            let coef = if negative { -coef } else { coef };
            if let Some(nf) = sys.reduce(&word).result.into_word() {
                out.add_term(nf, coef);
            }
            first = false;
        }
        Ok(out)
    }

    /// `{word-string: coefficient-string}` in term order.
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("element serializes")
    }

    pub fn from_json(v: &Value, sys: RewriteSystem) -> Result<Self, AlgebraError> {
        let obj = v.as_object().ok_or_else(|| AlgebraError::Json("expected an object".into()))?;
        let mut out = Self::zero(sys);
        for (k, c) in obj {
            let word = {
                let mut p = Parser::new(k);
                let w = p.word(&sys.alphabet())?.ok_or_else(|| AlgebraError::Json(format!("empty word key {k:?}")))?;
                p.expect_end()?;
                w
            };
            let cs = c.as_str().ok_or_else(|| AlgebraError::Json(format!("coefficient of {k:?} is not a string")))?;
            let coef = parse_coefficient::<F>(cs)?;
            if let Some(nf) = sys.reduce(&word).result.into_word() {
                out.add_term(nf, coef);
            }
        }
        Ok(out)
    }
}

fn parse_coefficient<F: Field>(s: &str) -> Result<F, AlgebraError> {
    let mut p = Parser::new(s);
    let negative = p.eat('-');
    let at = p.position();
    let (num, den) = match p.number()? {
        Some(nd) => nd,
        // a lone "1" is lexed as the unit word
        None if p.eat('1') => (1.into(), 1.into()),
        None => return Err(AlgebraError::Json(format!("bad coefficient {s:?}"))),
    };
    p.expect_end()?;
    let c = F::from_fraction(&num, &den).ok_or(ParseError { position: at, kind: ParseErrorKind::ZeroDenominator })?;
    Ok(if negative { -c } else { c })
}

impl<F: Field> Serialize for AlgebraElement<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            map.serialize_entry(&w.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<F: Field> fmt::Display for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = split_sign(c);
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag} {w}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.sys)
    }
}

impl<F: Field> Add for &AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn add(self, rhs: Self) -> AlgebraElement<F> {
        self.checked_add(rhs).expect("presentation mismatch in +")
    }
}

impl<F: Field> Sub for &AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn sub(self, rhs: Self) -> AlgebraElement<F> {
        self.checked_sub(rhs).expect("presentation mismatch in -")
    }
}

impl<F: Field> Mul for &AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn mul(self, rhs: Self) -> AlgebraElement<F> {
        self.checked_mul(rhs).expect("presentation mismatch in *")
    }
}

impl<F: Field> Add for AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn add(self, rhs: Self) -> AlgebraElement<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn sub(self, rhs: Self) -> AlgebraElement<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn mul(self, rhs: Self) -> AlgebraElement<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for &AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn neg(self) -> AlgebraElement<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Neg for AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn neg(self) -> AlgebraElement<F> {
        -&self
    }
}

/// Shorthand constructors for elements of `S`.
impl<F: Field> AlgebraElement<F> {
    pub fn x(sys: RewriteSystem) -> Self {
        debug_assert_eq!(sys.presentation(), Presentation::S);
        Self::letter(Letter::X, sys)
    }

    pub fn q(sys: RewriteSystem) -> Self {
        debug_assert_eq!(sys.presentation(), Presentation::S);
        Self::letter(Letter::Q, sys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf3, Rational};
    use proptest::prelude::*;

    type E = AlgebraElement<Rational>;

    fn s3() -> RewriteSystem {
        RewriteSystem::default_s()
    }

    fn e(src: &str) -> E {
        E::parse(src, s3()).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&e("x + q") + &e("-x"), e("q"));
        assert_eq!(&E::zero(s3()) + &e("2 q^2 x - 1"), e("2 q^2 x - 1"));
        assert_eq!(&e("1 - x q") + &e("x q"), E::one(s3()));
    }

    #[test]
    fn mul_examples() {
        let (x, q) = (E::x(s3()), E::q(s3()));
        assert_eq!(&(&x * &q) * &x, x);
        assert_eq!(&e("1 - x q") * &x, E::zero(s3()));
        assert_eq!(&(&q * &x) * &q, q);
    }

    #[test]
    fn equals_examples() {
        assert!(e("q^2 x q x q^3 x^2 q").equals(&e("q^4 x^2 q")));
        assert!(e("x^3").equals(&E::zero(s3())));
        assert!(!e("x").equals(&e("q")));
    }

    #[test]
    fn presentation_mismatch() {
        let r = RewriteSystem::r(2).unwrap();
        let b = E::parse("b", r).unwrap();
        assert!(matches!(e("x").checked_add(&b), Err(AlgebraError::PresentationMismatch { .. })));
        assert!(e("x").checked_mul(&b).is_err());
        assert!(!e("1").equals(&E::one(r)));
    }

    #[test]
    fn corner_examples() {
        let qx = e("q x");
        // oracle: qx * qx^2 * qx by direct multiplication
        let direct = &(&qx * &e("q x^2")) * &qx;
        assert_eq!(e("q x^2").corner(&qx, &qx).unwrap(), direct);
        assert_eq!(direct, e("q x^2"));
        let f = e("1 - q x");
        assert_eq!(E::one(s3()).corner(&f, &f).unwrap(), f);
        assert_eq!(e("x").corner(&e("1 - x q"), &e("1 - q x")).unwrap(), E::zero(s3()));
        assert!(matches!(e("x").corner(&e("x"), &f), Err(AlgebraError::NotIdempotent { which: "left" })));
        assert!(matches!(e("x").corner(&f, &e("q")), Err(AlgebraError::NotIdempotent { which: "right" })));
    }

    #[test]
    fn relations_and_idempotents() {
        let sys = s3();
        let (x, q) = (E::x(sys), E::q(sys));
        assert_eq!(x.pow(3), E::zero(sys));
        assert_ne!(x.pow(2), E::zero(sys));
        let ex = e("1 - x q");
        let fq = e("1 - q x");
        assert!(ex.is_idempotent());
        assert!(fq.is_idempotent());
        assert!((&fq * &q).is_zero());
        assert!((&q * &ex).is_zero());
        assert!((&x * &fq).is_zero());
    }

    #[test]
    fn corner_generators() {
        // q^i x^j = (q^2 x)^(i-1) (q x^2)^(j-1) inside qxSqx
        let sys = s3();
        let (g1, g2) = (e("q^2 x"), e("q x^2"));
        let qx = e("q x");
        for i in 1..=5u32 {
            for j in 1..=2u32 {
                let lhs = E::word(&Word::from_blocks([(Letter::Q, i), (Letter::X, j)]), sys);
                let rhs = &(&qx * &g1.pow(i - 1)) * &g2.pow(j - 1);
                assert_eq!(lhs, rhs, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(e("1 - x q").to_string(), "1 - x q");
        assert_eq!(e("2 q^2 x - 1").to_string(), "-1 + 2 q^2 x");
        assert_eq!(e("q^2 x q x q^3 x^2 q").to_string(), "q^4 x^2 q");
        assert_eq!(e("x^3").to_string(), "0");
        assert_eq!(e("1").to_string(), "1");
        assert_eq!(e("3/4 x - 1/2").to_string(), "-1/2 + 3/4 x");
        assert_eq!(e("- x").to_string(), "-x");
        assert_eq!(e("5").to_string(), "5");
        let err = E::parse("x + + q", s3()).unwrap_err();
        assert!(matches!(err, AlgebraError::Parse(ParseError { position: 4, .. })), "{err:?}");
        assert!(E::parse("a", s3()).is_err());
        assert!(E::parse("", s3()).is_err());
        assert!(E::parse("1/0 x", s3()).is_err());
        assert!(AlgebraElement::<Gf3>::parse("1/3 x", s3()).is_err());
        assert_eq!(AlgebraElement::<Gf2>::parse("x + x", s3()).unwrap().to_string(), "0");
    }

    #[test]
    fn json_form() {
        let v = e("1 - x q + 3/2 q^2").to_json();
        assert_eq!(v.to_string(), r#"{"1":"1","x q":"-1","q^2":"3/2"}"#);
        assert_eq!(E::from_json(&v, s3()).unwrap(), e("1 - x q + 3/2 q^2"));
        assert!(E::from_json(&serde_json::json!({"x": 2}), s3()).is_err());
    }

    fn arb_element() -> impl Strategy<Value = E> {
        let words = s3().enumerate_basis(6);
        prop::collection::vec((0..words.len(), -3i64..=3), 0..5).prop_map(move |ts| {
            E::from_terms(ts.into_iter().map(|(i, c)| (Rational::from_i64(c), words[i].clone())), s3())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_element(), b in arb_element(), c in arb_element()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            let one = E::one(s3());
            prop_assert_eq!(&one * &a, a.clone());
            prop_assert_eq!(&a * &one, a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn keys_are_normal(a in arb_element(), b in arb_element()) {
            let p = &a * &b;
            for (w, c) in p.terms() {
                prop_assert!(s3().is_basis_word(w));
                prop_assert!(!num_traits::Zero::is_zero(c));
            }
        }

        #[test]
        fn text_and_json_round_trip(a in arb_element()) {
            prop_assert_eq!(E::parse(&a.to_string(), s3()).unwrap(), a.clone());
            prop_assert_eq!(E::from_json(&a.to_json(), s3()).unwrap(), a);
        }
    }
}
