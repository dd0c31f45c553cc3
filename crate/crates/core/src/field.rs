//! Exact coefficient fields: prime fields `GF(p)` and the rationals.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

/// An exact field of coefficients.
pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Short name used in reports (`gf2`, `gf3`, `rational`).
    const NAME: &'static str;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// `num / den`, or `None` when `den` vanishes in the field.
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// A finite pool of coefficients for exhaustive searches, including
    /// zero. Finite fields return every element; the rationals return the
    /// integers in `-bound..=bound`.
    fn search_pool(bound: u32) -> Vec<Self>;

    fn random_nonzero<G: Rng + ?Sized>(rng: &mut G) -> Self;
}

/// The prime field `Z/PZ`. `P` must be prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
pub type Rational = BigRational;

impl<const P: u32> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp((v % u64::from(P)) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((u64::from(self.0) + u64::from(rhs.0)) % u64::from(P)) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((u64::from(self.0) + u64::from(P) - u64::from(rhs.0)) % u64::from(P)) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((u64::from(self.0) * u64::from(rhs.0)) % u64::from(P)) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Field for Fp<P> {
    const NAME: &'static str = match P {
        2 => "gf2",
        3 => "gf3",
        5 => "gf5",
        7 => "gf7",
        _ => "gfp",
    };

    fn inv(&self) -> Option<Self> {
        // Fermat
        (!self.is_zero()).then(|| self.pow(P - 2))
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(i64::from(P)) as u32)
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |v: &BigInt| -> Self {
            let r = ((v % &p) + &p) % &p;
            Fp(r.to_u32().expect("residue fits"))
        };
        let d = reduce(den);
        d.inv().map(|di| reduce(num) * di)
    }

    fn search_pool(_bound: u32) -> Vec<Self> {
        (0..P).map(Fp).collect()
    }

    fn random_nonzero<G: Rng + ?Sized>(rng: &mut G) -> Self {
        Fp(rng.gen_range(1..P))
    }
}

impl Field for BigRational {
    const NAME: &'static str = "rational";

    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        (!den.is_zero()).then(|| BigRational::new(num.clone(), den.clone()))
    }

    fn search_pool(bound: u32) -> Vec<Self> {
        let b = i64::from(bound);
        let mut pool = vec![Self::zero()];
        for k in 1..=b {
            pool.push(Self::from_i64(k));
            pool.push(Self::from_i64(-k));
        }
        pool
    }

    fn random_nonzero<G: Rng + ?Sized>(rng: &mut G) -> Self {
        let v: i64 = rng.gen_range(1..=5);
        let v = if rng.gen_bool(0.5) { v } else { -v };
        let d: i64 = rng.gen_range(1..=3);
        BigRational::new(BigInt::from(v), BigInt::from(d))
    }
}

/// Renders a coefficient for the `<int-or-fraction>` literal grammar,
/// returning the sign separately.
pub(crate) fn split_sign<F: Field>(c: &F) -> (bool, String) {
    let s = c.to_string();
    match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    }
}
