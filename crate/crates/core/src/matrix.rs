//! The matrix model of `S`.
//!
//! `R = F<a, b | a^m = 0>` with `m = n - 1`, `I = R(1 - ba)` and
//! `T = [[R, I], [R, F + I]]` inside `M_2(R)`. The map
//! `phi: q -> Q = [[b, 1 - ba], [0, 0]]`, `x -> X = [[a, 0], [1, 0]]`
//! is an isomorphism `S -> T` for `n >= 3`. For `n = 2` it has a kernel
//! and `S` is instead `M_2(F[b]) x F`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::element::{AlgebraElement, AlgebraError, FreeAlgElement};
use crate::field::Field;
use crate::linalg::{kernel_vector, rank, solve};
use crate::par::Execution;
use crate::parse::{ParseError, Parser};
use crate::report::{ReportBuilder, VerificationReport};
use crate::rewrite::{Presentation, RewriteSystem};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("{check} needs presentation {expected}, got {sys}")]
    WrongPresentation { check: &'static str, expected: Presentation, sys: RewriteSystem },
    #[error("{check} requires {requirement}, got {sys}")]
    UnsupportedDegree { check: &'static str, requirement: &'static str, sys: RewriteSystem },
    #[error("entry of degree {degree} exceeds the solve bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid matrix JSON: {0}")]
    Json(String),
}

fn require(check: &'static str, sys: RewriteSystem, expected: Presentation) -> Result<(), MatrixError> {
    if sys.presentation() == expected {
        Ok(())
    } else {
        Err(MatrixError::WrongPresentation { check, expected, sys })
    }
}

/// Product in `R`; a word vanishes exactly when an `a`-block reaches `a^m`
/// at the interface.
pub fn free_mul<F: Field>(p: &FreeAlgElement<F>, r: &FreeAlgElement<F>) -> Result<FreeAlgElement<F>, MatrixError> {
    require("free_mul", p.system(), Presentation::R)?;
    Ok(p.checked_mul(r)?)
}

/// A 2x2 matrix over `R`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix2<F: Field> {
    entries: [[FreeAlgElement<F>; 2]; 2],
}

impl<F: Field> Matrix2<F> {
    pub fn new(entries: [[FreeAlgElement<F>; 2]; 2]) -> Result<Self, MatrixError> {
        let sys = entries[0][0].system();
        require("Matrix2", sys, Presentation::R)?;
        for e in entries.iter().flatten() {
            if e.system() != sys {
                return Err(AlgebraError::PresentationMismatch { left: sys, right: e.system() }.into());
            }
        }
        Ok(Matrix2 { entries })
    }

    pub fn zero(sys: RewriteSystem) -> Self {
        let z = FreeAlgElement::zero(sys);
        Matrix2 { entries: [[z.clone(), z.clone()], [z.clone(), z]] }
    }

    pub fn identity(sys: RewriteSystem) -> Self {
        Self::diagonal(FreeAlgElement::one(sys), FreeAlgElement::one(sys))
    }

    pub fn diagonal(d1: FreeAlgElement<F>, d2: FreeAlgElement<F>) -> Self {
        let z = FreeAlgElement::zero(d1.system());
        Matrix2 { entries: [[d1, z.clone()], [z, d2]] }
    }

    /// `r` placed at position `(i, j)`, zero-based.
    pub fn unit(i: usize, j: usize, r: FreeAlgElement<F>) -> Self {
        let mut m = Self::zero(r.system());
        m.entries[i][j] = r;
        m
    }

    pub fn system(&self) -> RewriteSystem {
        self.entries[0][0].system()
    }

    /// Entry at `(i, j)`, zero-based.
    pub fn entry(&self, i: usize, j: usize) -> &FreeAlgElement<F> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[[FreeAlgElement<F>; 2]; 2] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(AlgebraElement::is_zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix2 { entries: self.entries.clone().map(|row| row.map(|e| e.scale(c))) }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.system());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Parses `[[e11, e12], [e21, e22]]` with entries over `{a, b}`.
    pub fn parse(src: &str, sys: RewriteSystem) -> Result<Self, MatrixError> {
        require("Matrix2::parse", sys, Presentation::R)?;
        let mut p = Parser::new(src);
        let mut rows = Vec::with_capacity(2);
        p.expect('[')?;
        for i in 0..2 {
            if i > 0 {
                p.expect(',')?;
            }
            p.expect('[')?;
            let a = AlgebraElement::parse_with(&mut p, sys)?;
            p.expect(',')?;
            let b = AlgebraElement::parse_with(&mut p, sys)?;
            p.expect(']')?;
            rows.push([a, b]);
        }
        p.expect(']')?;
        p.expect_end()?;
        let [r1, r2]: [[FreeAlgElement<F>; 2]; 2] = rows.try_into().expect("two rows");
        Ok(Matrix2 { entries: [r1, r2] })
    }

    pub fn to_json(&self) -> Value {
        json!([
            [self.entries[0][0].to_json(), self.entries[0][1].to_json()],
            [self.entries[1][0].to_json(), self.entries[1][1].to_json()]
        ])
    }

    pub fn from_json(v: &Value, sys: RewriteSystem) -> Result<Self, MatrixError> {
        let bad = || MatrixError::Json("expected [[e11, e12], [e21, e22]]".into());
        let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
        let mut out = Self::zero(sys);
        for (i, row) in rows.iter().enumerate() {
            let cols = row.as_array().filter(|c| c.len() == 2).ok_or_else(bad)?;
            for (j, c) in cols.iter().enumerate() {
                out.entries[i][j] = AlgebraElement::from_json(c, sys)?;
            }
        }
        Ok(out)
    }

    /// Coordinates over `(position, word)` pairs, for rank computations.
    fn flatten_into(&self, index: &mut HashMap<(usize, Word), usize>) -> Vec<(usize, F)> {
        let mut out = Vec::new();
        for (pos, e) in self.entries.iter().flatten().enumerate() {
            for (w, c) in e.terms() {
                let k = index.len();
                let slot = *index.entry((pos, w.clone())).or_insert(k);
                out.push((slot, c.clone()));
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Matrix2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

impl<F: Field> fmt::Debug for Matrix2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.system())
    }
}

impl<F: Field> Mul for &Matrix2<F> {
    type Output = Matrix2<F>;
    fn mul(self, rhs: Self) -> Matrix2<F> {
        let (a, b) = (&self.entries, &rhs.entries);
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Matrix2 { entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]] }
    }
}

impl<F: Field> Add for &Matrix2<F> {
    type Output = Matrix2<F>;
    fn add(self, rhs: Self) -> Matrix2<F> {
        let (a, b) = (&self.entries, &rhs.entries);
        let cell = |i: usize, j: usize| &a[i][j] + &b[i][j];
        Matrix2 { entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]] }
    }
}

impl<F: Field> Sub for &Matrix2<F> {
    type Output = Matrix2<F>;
    fn sub(self, rhs: Self) -> Matrix2<F> {
        let (a, b) = (&self.entries, &rhs.entries);
        let cell = |i: usize, j: usize| &a[i][j] - &b[i][j];
        Matrix2 { entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]] }
    }
}

/// `1 - ba` in `R`.
pub fn one_minus_ba<F: Field>(sys: RewriteSystem) -> FreeAlgElement<F> {
    let ba = FreeAlgElement::word(&Word::from_letters(&[Letter::B, Letter::A]), sys);
    &FreeAlgElement::one(sys) - &ba
}

/// Whether a matrix lies in `T`, with certificates:
/// `e12 = s12 (1 - ba)` and `e22 = c22 + s22 (1 - ba)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TMembership<F: Field> {
    pub in_t: bool,
    pub s12: Option<FreeAlgElement<F>>,
    pub c22: Option<F>,
    pub s22: Option<FreeAlgElement<F>>,
}

/// Splits `r = s (1 - ba) + rest` where no word of `rest` ends in `ba`.
///
/// The leading word of `s (1 - ba)` is `lead(s) b a`, and distinct `s`
/// words give distinct leading words, so repeatedly cancelling the
/// largest word ending in `ba` computes the unique such split. In
/// particular `r` is in `I` iff `rest = 0`.
pub fn divide_by_one_minus_ba<F: Field>(r: &FreeAlgElement<F>) -> (FreeAlgElement<F>, FreeAlgElement<F>) {
    let sys = r.system();
    if sys.degree() == 1 {
        return (r.clone(), FreeAlgElement::zero(sys));
    }
    let g = one_minus_ba::<F>(sys);
    let mut s = FreeAlgElement::zero(sys);
    let mut rest = FreeAlgElement::zero(sys);
    let mut cur = r.clone();
    let tail = [Letter::B, Letter::A];
    while let Some((w, c)) = cur.leading_term().map(|(w, c)| (w.clone(), c.clone())) {
        let letters = w.to_letters();
        let ends_ba = letters.len() >= 2 && letters[letters.len() - 2..] == tail;
        if ends_ba {
            // the coefficient of u b a in u (1 - ba) is -1
            let (u, _) = w.split_at(letters.len() - 2);
            let step = FreeAlgElement::monomial(-c, &u, sys);
            cur = &cur - &(&step * &g);
            s = &s + &step;
        } else {
            let term = FreeAlgElement::monomial(c, &w, sys);
            cur = &cur - &term;
            rest = &rest + &term;
        }
    }
    (s, rest)
}

/// Decides membership in `T` by division by `1 - ba`.
pub fn membership_t<F: Field>(m: &Matrix2<F>) -> TMembership<F> {
    let sys = m.system();
    let (s12, rest12) = divide_by_one_minus_ba(m.entry(0, 1));
    let (s22, rest22) = divide_by_one_minus_ba(m.entry(1, 1));
    let constant = rest22.coeff(&Word::one());
    let ok12 = rest12.is_zero();
    let ok22 = rest22 == FreeAlgElement::scalar(constant.clone(), sys);
    let in_t = ok12 && ok22;
    TMembership {
        in_t,
        s12: ok12.then_some(s12),
        c22: ok22.then_some(constant),
        s22: ok22.then_some(s22),
    }
}

/// Solves `r = c + s (1 - ba)` by dense linear algebra with `s` ranging
/// over words of length at most `deg(r)`. Returns `(c, s)`.
fn solve_affine<F: Field>(
    r: &FreeAlgElement<F>,
    with_constant: bool,
    max_degree: usize,
) -> Result<Option<(F, FreeAlgElement<F>)>, MatrixError> {
    let sys = r.system();
    let degree = r.degree().unwrap_or(0);
    if degree > max_degree {
        return Err(MatrixError::DegreeBound { degree, bound: max_degree });
    }
    let g = one_minus_ba::<F>(sys);
    let unknowns = sys.enumerate_basis(degree);
    let mut cols: Vec<FreeAlgElement<F>> = unknowns.iter().map(|u| &FreeAlgElement::word(u, sys) * &g).collect();
    if with_constant {
        cols.push(FreeAlgElement::one(sys));
    }
    let rows_words = sys.enumerate_basis(degree + 2);
    let a: Vec<Vec<F>> = rows_words.iter().map(|w| cols.iter().map(|c| c.coeff(w)).collect()).collect();
    let b: Vec<F> = rows_words.iter().map(|w| r.coeff(w)).collect();
    Ok(solve(&a, &b).map(|x| {
        let s = FreeAlgElement::from_terms(unknowns.iter().cloned().zip(x.iter().cloned()).map(|(w, c)| (c, w)), sys);
        let c = if with_constant { x[unknowns.len()].clone() } else { F::zero() };
        (c, s)
    }))
}

/// Membership in `T` by a bounded-degree linear solve. Entries of degree
/// above `max_degree` are rejected.
pub fn membership_t_by_solve<F: Field>(m: &Matrix2<F>, max_degree: usize) -> Result<TMembership<F>, MatrixError> {
    let e12 = solve_affine(m.entry(0, 1), false, max_degree)?;
    let e22 = solve_affine(m.entry(1, 1), true, max_degree)?;
    Ok(TMembership {
        in_t: e12.is_some() && e22.is_some(),
        s12: e12.map(|(_, s)| s),
        c22: e22.as_ref().map(|(c, _)| c.clone()),
        s22: e22.map(|(_, s)| s),
    })
}

/// `X = [[a, 0], [1, 0]]` and `Q = [[b, 1 - ba], [0, 0]]` over `R`.
pub fn generators<F: Field>(r: RewriteSystem) -> (Matrix2<F>, Matrix2<F>) {
    let a = FreeAlgElement::letter(Letter::A, r);
    let b = FreeAlgElement::letter(Letter::B, r);
    let one = FreeAlgElement::one(r);
    let z = FreeAlgElement::zero(r);
    let x = Matrix2 { entries: [[a, z.clone()], [one, z.clone()]] };
    let q = Matrix2 { entries: [[b, one_minus_ba(r)], [z.clone(), z]] };
    (x, q)
}

/// `phi` together with cached powers of `X` and `Q`.
pub struct Phi<F: Field> {
    s: RewriteSystem,
    r: RewriteSystem,
    x: Matrix2<F>,
    q: Matrix2<F>,
}

impl<F: Field> Phi<F> {
    pub fn new(s: RewriteSystem) -> Result<Self, MatrixError> {
        require("phi", s, Presentation::S)?;
        let r = RewriteSystem::r_for(s.degree()).expect("S has n >= 2");
        let (x, q) = generators(r);
        Ok(Phi { s, r, x, q })
    }

    pub fn source(&self) -> RewriteSystem {
        self.s
    }

    pub fn target(&self) -> RewriteSystem {
        self.r
    }

    pub fn x(&self) -> &Matrix2<F> {
        &self.x
    }

    pub fn q(&self) -> &Matrix2<F> {
        &self.q
    }

    /// Image of an arbitrary word over `{x, q}`, as a matrix product.
    pub fn word(&self, w: &Word) -> Matrix2<F> {
        let mut acc = Matrix2::identity(self.r);
        for l in w.letters() {
            acc = match l {
                Letter::X => &acc * &self.x,
                Letter::Q => &acc * &self.q,
                _ => panic!("letter {l} is not in S"),
            };
        }
        acc
    }

    pub fn apply(&self, e: &AlgebraElement<F>) -> Result<Matrix2<F>, MatrixError> {
        if e.system() != self.s {
            return Err(AlgebraError::PresentationMismatch { left: self.s, right: e.system() }.into());
        }
        let mut out = Matrix2::zero(self.r);
        for (w, c) in e.terms() {
            out = &out + &self.word(w).scale(c);
        }
        Ok(out)
    }
}

/// `phi(e)` for `e` in `S`.
pub fn phi<F: Field>(e: &AlgebraElement<F>) -> Result<Matrix2<F>, MatrixError> {
    Phi::new(e.system())?.apply(e)
}

/// The word obtained by lowering every block exponent by one and
/// renaming `q -> b`, `x -> a`.
fn lowered(w: &Word) -> Word {
    Word::from_blocks(w.blocks().iter().map(|b| {
        let l = match b.letter {
            Letter::Q => Letter::B,
            _ => Letter::A,
        };
        (l, b.exp - 1)
    }))
}

fn images_rank<F: Field>(images: &[Matrix2<F>]) -> usize {
    let mut index = HashMap::new();
    let sparse: Vec<Vec<(usize, F)>> = images.iter().map(|m| m.flatten_into(&mut index)).collect();
    let rows: Vec<Vec<F>> = sparse
        .into_iter()
        .map(|s| {
            let mut v = vec![F::zero(); index.len()];
            for (k, c) in s {
                v[k] = c;
            }
            v
        })
        .collect();
    rank(&rows)
}

fn dense_columns<F: Field>(images: &[Matrix2<F>]) -> Vec<Vec<F>> {
    let mut index = HashMap::new();
    let sparse: Vec<Vec<(usize, F)>> = images.iter().map(|m| m.flatten_into(&mut index)).collect();
    sparse
        .into_iter()
        .map(|s| {
            let mut v = vec![F::zero(); index.len()];
            for (k, c) in s {
                v[k] = c;
            }
            v
        })
        .collect()
}

/// A nonzero element of `S` supported on basis words of length at most
/// `max_len` that `phi` sends to zero, if one exists.
pub fn phi_kernel_element<F: Field>(s: RewriteSystem, max_len: usize) -> Result<Option<AlgebraElement<F>>, MatrixError> {
    let phi = Phi::<F>::new(s)?;
    let basis = s.enumerate_basis(max_len);
    let images: Vec<Matrix2<F>> = basis.iter().map(|w| phi.word(w)).collect();
    Ok(kernel_vector(&dense_columns(&images))
        .map(|k| AlgebraElement::from_terms(k.into_iter().zip(basis.iter().cloned()), s)))
}

/// Evidence that `phi` is an isomorphism at bounded degree: relations,
/// generator images, membership in `T`, linear independence of the images
/// of all basis words up to `max_len`, and both corner correspondences.
pub fn verify_phi_faithful<F: Field>(
    s: RewriteSystem,
    max_len: usize,
    exec: Execution,
) -> Result<VerificationReport, MatrixError> {
    require("phi-faithful", s, Presentation::S)?;
    if s.degree() < 3 {
        return Err(MatrixError::UnsupportedDegree { check: "phi-faithful", requirement: "n >= 3", sys: s });
    }
    let report = ReportBuilder::new("phi-faithful").param("n", s.degree()).param("field", F::NAME).param("max_len", max_len as u64);
    let phi = Phi::<F>::new(s)?;
    let r = phi.target();
    let (x, q) = (phi.x(), phi.q());
    let a = FreeAlgElement::letter(Letter::A, r);
    let b = FreeAlgElement::letter(Letter::B, r);
    let fail = |what: &str, detail: String| Some(json!({ "check": what, "detail": detail }));

    let mut failure = None;
    if &(x * q) * x != *x {
        failure = fail("XQX = X", (&(x * q) * x).to_string());
    } else if &(q * x) * q != *q {
        failure = fail("QXQ = Q", (&(q * x) * q).to_string());
    } else if !x.pow(s.degree()).is_zero() || x.pow(s.degree() - 1).is_zero() {
        failure = fail("X nilpotent of index n", x.pow(s.degree()).to_string());
    } else if phi.word(&"q x^2".parse().expect("literal")) != Matrix2::unit(0, 0, a.clone()) {
        failure = fail("phi(q x^2) = e11 a", phi.word(&"q x^2".parse().expect("literal")).to_string());
    } else if phi.word(&"q^2 x".parse().expect("literal")) != Matrix2::unit(0, 0, b.clone()) {
        failure = fail("phi(q^2 x) = e11 b", phi.word(&"q^2 x".parse().expect("literal")).to_string());
    }

    let basis = s.enumerate_basis(max_len);
    let f = &AlgebraElement::<F>::one(s) - &(&AlgebraElement::q(s) * &AlgebraElement::x(s));
    let g = one_minus_ba::<F>(r);
    let per_word = exec.map(&basis, |w| {
        let img = phi.word(w);
        if !membership_t(&img).in_t {
            return (img, Some(json!({ "check": "image in T", "word": w.to_string() })));
        }
        let starts = w.first_letter();
        let ends = w.last_letter();
        if starts == Some(Letter::Q) && ends == Some(Letter::X) {
            let expected = Matrix2::unit(0, 0, FreeAlgElement::word(&lowered(w), r));
            if img != expected {
                let detail = json!({ "check": "qx corner", "word": w.to_string(), "image": img.to_string() });
                return (img, Some(detail));
            }
        }
        let corner = &(&f * &AlgebraElement::word(w, s)) * &f;
        if !(w.is_one() || (starts == Some(Letter::X) && ends == Some(Letter::Q))) {
            if !corner.is_zero() {
                let detail = json!({ "check": "(1 - qx) corner vanishes", "word": w.to_string(), "corner": corner.to_string() });
                return (img, Some(detail));
            }
        } else {
            let got = phi.apply(&corner).expect("same presentation");
            let expected = Matrix2::unit(1, 1, if w.is_one() { FreeAlgElement::one(r) } else { &FreeAlgElement::word(&lowered(w), r) * &g });
            if got != expected {
                let detail = json!({ "check": "(1 - qx) corner", "word": w.to_string(), "image": got.to_string() });
                return (img, Some(detail));
            }
        }
        (img, None)
    });
    let mut images = Vec::with_capacity(per_word.len());
    for (img, bad) in per_word {
        if failure.is_none() {
            failure = bad;
        }
        images.push(img);
    }
    if failure.is_none() {
        let rk = images_rank(&images);
        if rk != images.len() {
            let kernel = phi_kernel_element::<F>(s, max_len)?.map(|k| k.to_string());
            failure = Some(json!({ "check": "independence", "rank": rk, "words": images.len(), "kernel": kernel }));
        }
    }
    Ok(report.verdict(failure, basis.len() as u64))
}

/// A 2x2 matrix over the field itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2<F: Field>(pub [[F; 2]; 2]);

impl<F: Field> Mat2<F> {
    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Mat2(m.map(|row| row.map(F::from_i64)))
    }

    pub fn zero() -> Self {
        Self::from_ints([[0, 0], [0, 0]])
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0], [0, 1]])
    }

    pub fn det(&self) -> F {
        let m = &self.0;
        m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone()
    }

    pub fn scale(&self, c: &F) -> Self {
        Mat2(self.0.clone().map(|row| row.map(|v| v * c.clone())))
    }

    pub fn random<G: rand::Rng + ?Sized>(rng: &mut G) -> Self {
        let pool = F::search_pool(3);
        let mut pick = || pool[rng.gen_range(0..pool.len())].clone();
        Mat2([[pick(), pick()], [pick(), pick()]])
    }
}

impl<F: Field> Mul for &Mat2<F> {
    type Output = Mat2<F>;
    fn mul(self, rhs: Self) -> Mat2<F> {
        let (a, b) = (&self.0, &rhs.0);
        let cell = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
        Mat2([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }
}

impl<F: Field> Add for &Mat2<F> {
    type Output = Mat2<F>;
    fn add(self, rhs: Self) -> Mat2<F> {
        let (a, b) = (&self.0, &rhs.0);
        let cell = |i: usize, j: usize| a[i][j].clone() + b[i][j].clone();
        Mat2([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }
}

impl<F: Field> fmt::Display for Mat2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// `pi: R -> M_2(F)` with `a -> [[0, 0], [1, 0]]`, `b -> [[0, 1], [0, 0]]`.
/// Requires `m >= 2` so that `pi(a)^m = 0`.
pub fn pi_eval<F: Field>(r: &FreeAlgElement<F>) -> Result<Mat2<F>, MatrixError> {
    let sys = r.system();
    require("pi", sys, Presentation::R)?;
    if sys.degree() < 2 {
        return Err(MatrixError::UnsupportedDegree { check: "pi", requirement: "m >= 2", sys });
    }
    let pa = Mat2::<F>::from_ints([[0, 0], [1, 0]]);
    let pb = Mat2::<F>::from_ints([[0, 1], [0, 0]]);
    let mut out = Mat2::zero();
    for (w, c) in r.terms() {
        let mut acc = Mat2::identity();
        for l in w.letters() {
            acc = &acc * if l == Letter::A { &pa } else { &pb };
        }
        out = &out + &acc.scale(c);
    }
    Ok(out)
}

/// The matrix computation behind the non-unit-regularity of `X` in `T`
/// for `n = 3`: `1 - XQ` and `1 - QX` have the expected shapes,
/// `pi(1 - ba) = [[0, 0], [0, 1]]` is singular, and random `C`, `D` never
/// give `C pi(1 - ba) D = I`.
pub fn check_determinant_obstruction<F: Field>(trials: usize, seed: u64) -> Result<VerificationReport, MatrixError> {
    let report = ReportBuilder::new("determinant").param("field", F::NAME).param("trials", trials as u64).param("seed", seed);
    let s = RewriteSystem::default_s();
    let phi = Phi::<F>::new(s)?;
    let r = phi.target();
    let (x, q) = (phi.x(), phi.q());
    let id = Matrix2::identity(r);
    let g = one_minus_ba::<F>(r);
    let e = |src: &str| FreeAlgElement::<F>::parse(src, r).expect("literal");
    let expected_xq = Matrix2 { entries: [[e("1 - a b"), e("-a + a b a")], [e("-b"), e("b a")]] };
    let p = pi_eval(&g)?;
    let mut failure = None;
    if &id - &(x * q) != expected_xq {
        failure = Some(json!({ "check": "1 - XQ", "got": (&id - &(x * q)).to_string() }));
    } else if &id - &(q * x) != Matrix2::unit(1, 1, FreeAlgElement::one(r)) {
        failure = Some(json!({ "check": "1 - QX = e22", "got": (&id - &(q * x)).to_string() }));
    } else if p != Mat2::from_ints([[0, 0], [0, 1]]) {
        failure = Some(json!({ "check": "pi(1 - ba)", "got": p.to_string() }));
    } else if !p.det().is_zero() {
        failure = Some(json!({ "check": "det pi(1 - ba) = 0", "got": p.det().to_string() }));
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..trials {
            let (c, d) = (Mat2::<F>::random(&mut rng), Mat2::<F>::random(&mut rng));
            if &(&c * &p) * &d == Mat2::identity() {
                failure = Some(json!({ "check": "C pi(1 - ba) D != I", "trial": t, "C": c.to_string(), "D": d.to_string() }));
                break;
            }
        }
    }
    Ok(report.verdict(failure, trials as u64))
}

/// An element of `T' = M_2(F[b]) x F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPrime<F: Field> {
    pub matrix: Matrix2<F>,
    pub scalar: F,
}

impl<F: Field> Mul for &TPrime<F> {
    type Output = TPrime<F>;
    fn mul(self, rhs: Self) -> TPrime<F> {
        TPrime { matrix: &self.matrix * &rhs.matrix, scalar: self.scalar.clone() * rhs.scalar.clone() }
    }
}

impl<F: Field> Add for &TPrime<F> {
    type Output = TPrime<F>;
    fn add(self, rhs: Self) -> TPrime<F> {
        TPrime { matrix: &self.matrix + &rhs.matrix, scalar: self.scalar.clone() + rhs.scalar.clone() }
    }
}

/// The map `S -> T'` for `n = 2`:
/// `q -> ([[b, 1], [0, 0]], 0)`, `x -> ([[0, 0], [1, 0]], 0)`, `1 -> (I, 1)`.
pub fn psi<F: Field>(e: &AlgebraElement<F>) -> Result<TPrime<F>, MatrixError> {
    let s = e.system();
    require("psi", s, Presentation::S)?;
    if s.degree() != 2 {
        return Err(MatrixError::UnsupportedDegree { check: "psi", requirement: "n = 2", sys: s });
    }
    let fb = RewriteSystem::r(1).expect("m = 1 is valid");
    let (x, q) = generators::<F>(fb);
    let one = TPrime { matrix: Matrix2::identity(fb), scalar: F::one() };
    let xs = TPrime { matrix: x, scalar: F::zero() };
    let qs = TPrime { matrix: q, scalar: F::zero() };
    let mut out = TPrime { matrix: Matrix2::zero(fb), scalar: F::zero() };
    for (w, c) in e.terms() {
        let mut acc = one.clone();
        for l in w.letters() {
            acc = &acc * if l == Letter::X { &xs } else { &qs };
        }
        out = &out + &TPrime { matrix: acc.matrix.scale(c), scalar: acc.scalar * c.clone() };
    }
    Ok(out)
}

/// `1 - qx - xq + xq^2x` in `S`.
pub fn n2_idempotent<F: Field>(s: RewriteSystem) -> AlgebraElement<F> {
    AlgebraElement::parse("1 - q x - x q + x q^2 x", s).expect("literal")
}

/// The degenerate case `n = 2`: relations hold in `T'`,
/// `e = 1 - qx - xq + xq^2x` is a nonzero central idempotent with
/// `phi(e) = 0` and image `(0, 1)` in `T'`, and the images in `T'` of the
/// basis words up to `max_len` are independent.
pub fn n2_variant_check<F: Field>(max_len: usize) -> Result<VerificationReport, MatrixError> {
    let report = ReportBuilder::new("n2-variant").param("n", 2).param("field", F::NAME).param("max_len", max_len as u64);
    let s = RewriteSystem::s(2).expect("n = 2 is valid");
    let (x, q) = (AlgebraElement::<F>::x(s), AlgebraElement::<F>::q(s));
    let (xs, qs) = (psi(&x)?, psi(&q)?);
    let zero_t = TPrime { matrix: Matrix2::zero(RewriteSystem::r(1).expect("valid")), scalar: F::zero() };
    let e = n2_idempotent::<F>(s);
    let fail = |what: &str| Some(json!({ "check": what }));
    let mut failure = None;
    if &(&xs * &qs) * &xs != xs {
        failure = fail("XQX = X in T'");
    } else if &(&qs * &xs) * &qs != qs {
        failure = fail("QXQ = Q in T'");
    } else if &xs * &xs != zero_t {
        failure = fail("X^2 = 0 in T'");
    } else if e.is_zero() || &e * &e != e {
        failure = fail("e is a nonzero idempotent");
    } else if &e * &x != &x * &e || &e * &q != &q * &e {
        failure = fail("e commutes with x and q");
    } else if !phi(&e)?.is_zero() {
        failure = fail("phi(e) = 0");
    } else if psi(&e)? != (TPrime { matrix: zero_t.matrix.clone(), scalar: F::one() }) {
        failure = fail("psi(e) = (0, 1)");
    } else if !(&x * &e).is_zero() || !(&q * &e).is_zero() {
        failure = fail("xe = qe = 0");
    }
    let basis = s.enumerate_basis(max_len);
    if failure.is_none() {
        let mut index = HashMap::new();
        let mut sparse = Vec::new();
        let scalar_slot = usize::MAX;
        for w in &basis {
            let t = psi(&AlgebraElement::<F>::word(w, s))?;
            let mut v = t.matrix.flatten_into(&mut index);
            if !t.scalar.is_zero() {
                v.push((scalar_slot, t.scalar));
            }
            sparse.push(v);
        }
        let dim = index.len() + 1;
        let rows: Vec<Vec<F>> = sparse
            .into_iter()
            .map(|s| {
                let mut v = vec![F::zero(); dim];
                for (k, c) in s {
                    v[if k == scalar_slot { dim - 1 } else { k }] = c;
                }
                v
            })
            .collect();
        let rk = rank(&rows);
        if rk != basis.len() {
            failure = Some(json!({ "check": "psi independence", "rank": rk, "words": basis.len() }));
        }
    }
    Ok(report.verdict(failure, basis.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Rational};

    type R = FreeAlgElement<Rational>;

    fn r2() -> RewriteSystem {
        RewriteSystem::r(2).unwrap()
    }

    fn re(src: &str) -> R {
        R::parse(src, r2()).unwrap()
    }

    #[test]
    fn free_products() {
        assert!(free_mul(&re("b a"), &re("a b")).unwrap().is_zero());
        assert_eq!(free_mul(&re("b"), &re("b")).unwrap(), re("b^2"));
        assert_eq!(free_mul(&free_mul(&re("a"), &re("b")).unwrap(), &re("a")).unwrap(), re("a b a"));
        let s = RewriteSystem::default_s();
        assert!(free_mul(&R::one(s), &R::one(s)).is_err());
    }

    #[test]
    fn generator_images() {
        let s = RewriteSystem::default_s();
        let p = Phi::<Rational>::new(s).unwrap();
        let (x, q) = (p.x(), p.q());
        assert_eq!(&(x * q) * x, *x);
        assert_eq!(&(q * x) * q, *q);
        assert!(x.pow(3).is_zero());
        assert!(!x.pow(2).is_zero());
        let e = |src: &str| AlgebraElement::<Rational>::parse(src, s).unwrap();
        assert_eq!(phi(&e("q x^2")).unwrap(), Matrix2::unit(0, 0, re("a")));
        assert_eq!(phi(&e("q^2 x")).unwrap(), Matrix2::unit(0, 0, re("b")));
        assert!(phi(&e("x^3")).unwrap().is_zero());
        assert_eq!(phi(&e("q x")).unwrap(), Matrix2::unit(0, 0, re("1")));
    }

    #[test]
    fn membership_examples() {
        let s = RewriteSystem::default_s();
        let p = Phi::<Rational>::new(s).unwrap();
        let mx = membership_t(p.x());
        assert!(mx.in_t);
        assert_eq!(mx.c22, Some(Rational::from_i64(0)));
        let mq = membership_t(p.q());
        assert!(mq.in_t);
        assert_eq!(mq.s12, Some(re("1")));
        let bad = Matrix2::<Rational>::parse("[[0, 1], [0, 0]]", r2()).unwrap();
        assert!(!membership_t(&bad).in_t);
        for deg in 0..=6 {
            assert!(!membership_t_by_solve(&bad, deg).unwrap().in_t);
        }
        let odd = Matrix2::<Rational>::parse("[[0, 0], [0, 2 + b - 2 b a]]", r2()).unwrap();
        assert!(!membership_t(&odd).in_t);
        let fine = Matrix2::<Rational>::parse("[[a, b a b - b a b b a], [1, 3 + a b - a b b a]]", r2()).unwrap();
        let m = membership_t(&fine);
        assert!(m.in_t);
        assert_eq!(m.s12, Some(re("b a b")));
        assert_eq!(m.c22, Some(Rational::from_i64(3)));
        assert_eq!(m.s22, Some(re("a b")));
        assert!(matches!(membership_t_by_solve(&fine, 2), Err(MatrixError::DegreeBound { degree: 5, bound: 2 })));
    }

    #[test]
    fn matrix_literals() {
        let m = Matrix2::<Rational>::parse("[[a, 0], [1, 1 - b a]]", r2()).unwrap();
        assert_eq!(m.to_string(), "[[a, 0], [1, 1 - b a]]");
        assert_eq!(Matrix2::from_json(&m.to_json(), r2()).unwrap(), m);
        assert!(Matrix2::<Rational>::parse("[[a, 0], [1]]", r2()).is_err());
        assert!(Matrix2::<Rational>::parse("[[x, 0], [1, 0]]", r2()).is_err());
    }

    #[test]
    fn pi_values() {
        let pi = |src: &str| pi_eval(&re(src)).unwrap();
        assert_eq!(pi("1 - b a"), Mat2::from_ints([[0, 0], [0, 1]]));
        assert_eq!(pi("a^2"), Mat2::zero());
        assert_eq!(pi("a b"), Mat2::from_ints([[0, 0], [0, 1]]));
        assert_eq!(pi("1 - b a").det(), Rational::from_i64(0));
        assert!(pi_eval(&R::one(RewriteSystem::r(1).unwrap())).is_err());
    }

    #[test]
    fn checks_pass() {
        let s = RewriteSystem::default_s();
        let r = verify_phi_faithful::<Gf2>(s, 4, Execution::Sequential).unwrap();
        assert!(r.is_success(), "{r}");
        assert!(verify_phi_faithful::<Gf2>(RewriteSystem::s(2).unwrap(), 3, Execution::Sequential).is_err());
        assert!(check_determinant_obstruction::<Gf2>(100, 3).unwrap().is_success());
        let n2 = n2_variant_check::<Rational>(5).unwrap();
        assert!(n2.is_success(), "{n2}");
    }

    #[test]
    fn n2_kernel() {
        let s = RewriteSystem::s(2).unwrap();
        let k = phi_kernel_element::<Rational>(s, 4).unwrap().unwrap();
        let e = n2_idempotent::<Rational>(s);
        let c = k.coeff(&Word::one());
        assert_eq!(k, e.scale(&c));
        assert!(phi_kernel_element::<Rational>(RewriteSystem::default_s(), 4).unwrap().is_none());
    }
}
