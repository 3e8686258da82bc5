//! The groups `G(m,n) = Z[1/mn] ⋊ Z`, where the generator of `Z` acts on
//! `H = Z[1/mn]` by multiplication by `m/n`.
//!
//! # Convention
//!
//! Elements are pairs `(x, p)` with `x ∈ H` and `p ∈ Z`, multiplied by
//!
//! ```text
//! (x, p) · (y, q) = (x + φ^p(y), p + q),     φ(y) = (m/n)·y.
//! ```
//!
//! So `t = (0, 1)` satisfies `t·(y,0)·t⁻¹ = (φ(y), 0)`, and
//! `conjugate(g, c) = c⁻¹·g·c` acts on `H` by `φ^{-p}` when `c = (_, p)`.
//! With `a = (1, 0)` this gives `t⁻¹ a^m t = a^n`, so `a ↦ (1,0)`,
//! `t ↦ (0,1)` is a homomorphism `BS(m,n) → G(m,n)` (an isomorphism when
//! `m = 1`).
//!
//! `G(1,1)` is `Z²` and `G(1,k)` is `BS(1,k)`.

mod certificate;
mod classify;
mod witness;

pub use certificate::{bezout_certificate, egcd, BezoutCertificate, Side};
pub use classify::{gmn_subgroup_params, two_gen_classify, Classification};
pub use witness::{csa_violation_witness, weak_ah_witness, CsaWitness, WeakAhWitness};

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{mn_member, Ratio};
use crate::scalar::Scalar;
use crate::words::{GenId, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GmnError {
    #[error("G({m},{n}) needs m, n >= 1 and gcd(m, n) = 1")]
    BadParams { m: String, n: String },
    #[error("{x} is not in Z[1/{mn}]")]
    NotInRing { x: String, mn: String },
    #[error("elements belong to different groups {0} and {1}")]
    ParamMismatch(String, String),
    #[error("the centralizer of the identity is the whole group")]
    IdentityInput,
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("G(1,1) has no Bezout content")]
    NoBezoutContent,
    #[error("word uses generator #{0} with no image")]
    UnmappedGenerator(u32),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// Coprime positive parameters `(m, n)` of `G(m,n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GmnParams<I = BigInt> {
    m: I,
    n: I,
}

impl<I: Scalar> GmnParams<I> {
    pub fn new(m: I, n: I) -> Result<Self, GmnError> {
        if !m.is_positive() || !n.is_positive() || !m.gcd(&n).is_one() {
            return Err(GmnError::BadParams { m: m.to_string(), n: n.to_string() });
        }
        Ok(GmnParams { m, n })
    }

    pub fn from_ints(m: i64, n: i64) -> Result<Self, GmnError> {
        Self::new(I::from_int(m), I::from_int(n))
    }

    pub fn m(&self) -> &I {
        &self.m
    }

    pub fn n(&self) -> &I {
        &self.n
    }

    /// `m = n = 1`, i.e. the group is `Z²`.
    pub fn is_abelian(&self) -> bool {
        self.m.is_one() && self.n.is_one()
    }

    pub fn contains(&self, x: &Ratio<I>) -> bool {
        mn_member(x, &self.m, &self.n)
    }

    /// `x · (m/n)^k`.
    pub fn phi_pow(&self, x: &Ratio<I>, k: i64) -> Ratio<I> {
        if k == 0 || x.is_zero() {
            return x.clone();
        }
        let e = k.unsigned_abs();
        let (up, down) = if k > 0 { (&self.m, &self.n) } else { (&self.n, &self.m) };
        let scale = Ratio::new(up.pow_u(e), down.pow_u(e)).expect("positive parameters");
        x * &scale
    }

    /// `(m/n)^k` as a rational.
    pub fn ratio_pow(&self, k: i64) -> Ratio<I> {
        self.phi_pow(&Ratio::one(), k)
    }

    pub fn identity(&self) -> GmnElement<I> {
        GmnElement { params: self.clone(), x: Ratio::zero(), p: 0 }
    }

    /// The standard generator `a = (1, 0)`.
    pub fn a(&self) -> GmnElement<I> {
        GmnElement { params: self.clone(), x: Ratio::one(), p: 0 }
    }

    /// The standard generator `t = (0, 1)`.
    pub fn t(&self) -> GmnElement<I> {
        GmnElement { params: self.clone(), x: Ratio::zero(), p: 1 }
    }

    pub fn element(&self, x: Ratio<I>, p: i64) -> Result<GmnElement<I>, GmnError> {
        GmnElement::new(self.clone(), x, p)
    }

    /// Element of `H` (t-exponent zero).
    pub fn h(&self, x: Ratio<I>) -> Result<GmnElement<I>, GmnError> {
        self.element(x, 0)
    }

    /// Evaluates a word, sending generator `i` to `images[i]`.
    pub fn eval_with(&self, w: &Word, images: &[GmnElement<I>]) -> Result<GmnElement<I>, GmnError> {
        let mut acc = self.identity();
        for l in w.letters() {
            let g = images.get(l.gen.index()).ok_or(GmnError::UnmappedGenerator(l.gen.0))?;
            acc = acc.try_mul(&g.pow(l.exp))?;
        }
        Ok(acc)
    }

    /// Evaluates a word over the `{a, t}` alphabet of [`crate::words::bs_alphabet`].
    pub fn eval(&self, w: &Word) -> Result<GmnElement<I>, GmnError> {
        self.eval_with(w, &[self.a(), self.t()])
    }

    /// Parses `(num/den, p)` as an element of this group.
    pub fn parse_element(&self, s: &str) -> Result<GmnElement<I>, GmnError> {
        let bad = || GmnError::Parse(s.to_string());
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (x, p) = body.split_once(',').ok_or_else(bad)?;
        let x: Ratio<I> = x.parse().map_err(|_| bad())?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        self.element(x, p)
    }
}

impl<I: Scalar> fmt::Display for GmnParams<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.m, self.n)
    }
}

impl<I: Scalar> FromStr for GmnParams<I> {
    type Err = GmnError;

    /// `G(m,n)`, whitespace tolerated.
    fn from_str(s: &str) -> Result<Self, GmnError> {
        let bad = || GmnError::Parse(s.to_string());
        let body = s
            .trim()
            .strip_prefix("G(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (m, n) = body.split_once(',').ok_or_else(bad)?;
        let m: I = m.trim().parse().map_err(|_| bad())?;
        let n: I = n.trim().parse().map_err(|_| bad())?;
        Self::new(m, n)
    }
}

impl<I: Scalar> Serialize for GmnParams<I> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de, I: Scalar> Deserialize<'de> for GmnParams<I> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// An element `(x, p)` of `G(m,n)`; `x ∈ Z[1/mn]` always holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GmnElement<I = BigInt> {
    params: GmnParams<I>,
    x: Ratio<I>,
    p: i64,
}

impl<I: Scalar> GmnElement<I> {
    pub fn new(params: GmnParams<I>, x: Ratio<I>, p: i64) -> Result<Self, GmnError> {
        if !params.contains(&x) {
            return Err(GmnError::NotInRing {
                x: x.to_string(),
                mn: (params.m.clone() * params.n.clone()).to_string(),
            });
        }
        Ok(GmnElement { params, x, p })
    }

    pub fn params(&self) -> &GmnParams<I> {
        &self.params
    }

    /// The `H = Z[1/mn]` component.
    pub fn x(&self) -> &Ratio<I> {
        &self.x
    }

    /// The t-exponent.
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn is_identity(&self) -> bool {
        self.p == 0 && self.x.is_zero()
    }

    pub fn in_h(&self) -> bool {
        self.p == 0
    }

    fn check(&self, other: &Self) -> Result<(), GmnError> {
        if self.params != other.params {
            return Err(GmnError::ParamMismatch(self.params.to_string(), other.params.to_string()));
        }
        Ok(())
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        GmnElement {
            params: self.params.clone(),
            x: &self.x + &self.params.phi_pow(&other.x, self.p),
            p: self.p + other.p,
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, GmnError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `(−φ^{−p}(x), −p)`.
    pub fn inv(&self) -> Self {
        GmnElement {
            params: self.params.clone(),
            x: -self.params.phi_pow(&self.x, -self.p),
            p: -self.p,
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.params.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `by⁻¹ · self · by`.
    pub fn conjugate(&self, by: &Self) -> Result<Self, GmnError> {
        self.check(by)?;
        Ok(by.inv().mul_unchecked(self).mul_unchecked(by))
    }

    /// `self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Self) -> Result<Self, GmnError> {
        self.check(other)?;
        Ok(self
            .inv()
            .mul_unchecked(&other.inv())
            .mul_unchecked(self)
            .mul_unchecked(other))
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, GmnError> {
        self.commutator(other).map(|c| c.is_identity())
    }

    /// An element with t-exponent `q` commuting with `self`, if one exists.
    /// Free choices of the `H` component use `x` itself (for `self ∈ H`) or
    /// zero (in `Z²`); see [`Self::centralizer_sample_with`].
    pub fn centralizer_sample(&self, q: i64) -> Result<Option<Self>, GmnError> {
        let free = if self.params.is_abelian() { Ratio::zero() } else { self.x.clone() };
        self.centralizer_sample_with(q, &free)
    }

    /// Like [`Self::centralizer_sample`], with `free` used wherever the
    /// centralizer leaves the `H` component unconstrained.
    ///
    /// For `self = (x, p)`:
    /// - `Z²`: everything commutes, returns `(free, q)`;
    /// - `p ≠ 0`: the only candidate is `(x·(1−r^q)/(1−r^p), q)` with
    ///   `r = m/n`, returned when it lies in `H`;
    /// - `p = 0`: nonzero elements of `H` commute only with `H`, so
    ///   `(free, 0)` for `q = 0` and nothing otherwise.
    pub fn centralizer_sample_with(&self, q: i64, free: &Ratio<I>) -> Result<Option<Self>, GmnError> {
        if self.is_identity() {
            return Err(GmnError::IdentityInput);
        }
        let params = &self.params;
        if params.is_abelian() {
            return params.element(free.clone(), q).map(Some);
        }
        if self.p == 0 {
            return if q == 0 { params.h(free.clone()).map(Some) } else { Ok(None) };
        }
        if q == 0 {
            return Ok(Some(params.identity()));
        }
        let one = Ratio::one();
        let num = &one - &params.ratio_pow(q);
        let den = &one - &params.ratio_pow(self.p);
        let y = &self.x * &(&num * &den.recip().expect("r^p != 1 when r != 1 and p != 0"));
        if !params.contains(&y) {
            return Ok(None);
        }
        Ok(Some(GmnElement { params: params.clone(), x: y, p: q }))
    }
}

impl<I: Scalar> Mul for &GmnElement<I> {
    type Output = GmnElement<I>;

    /// Panics if the operands live in different groups; use
    /// [`GmnElement::try_mul`] for a fallible product.
    fn mul(self, rhs: &GmnElement<I>) -> GmnElement<I> {
        self.try_mul(rhs).expect("product of elements from different groups")
    }
}

impl<I: Scalar> fmt::Display for GmnElement<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.p)
    }
}

impl<I: Scalar> Serialize for GmnElement<I> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `a` and `t` in the two-letter alphabet used for Baumslag–Solitar words.
pub(crate) const GEN_A: GenId = GenId(0);
pub(crate) const GEN_T: GenId = GenId(1);

#[cfg(test)]
mod tests {
    use super::*;

    type P = GmnParams<BigInt>;
    type E = GmnElement<BigInt>;

    fn g(m: i64, n: i64) -> P {
        P::from_ints(m, n).unwrap()
    }

    fn el(p: &P, s: &str) -> E {
        p.parse_element(s).unwrap()
    }

    fn q(s: &str) -> Ratio<BigInt> {
        s.parse().unwrap()
    }

    #[test]
    fn params_guard() {
        assert!(P::from_ints(6, 2).is_err());
        assert!(P::from_ints(0, 1).is_err());
        assert!(P::from_ints(-2, 3).is_err());
        assert_eq!("G(2, 3)".parse::<P>().unwrap(), g(2, 3));
        assert_eq!(g(2, 3).to_string(), "G(2,3)");
        assert!("BS(2,3)".parse::<P>().is_err());
    }

    #[test]
    fn phi_pow_examples() {
        let p = g(2, 3);
        assert_eq!(p.phi_pow(&q("1"), 1), q("2/3"));
        assert_eq!(p.phi_pow(&q("5/7"), 0), q("5/7"));
        assert_eq!(p.phi_pow(&q("3"), -1), q("9/2"));
    }

    #[test]
    fn element_ring_guard() {
        let p = g(2, 3);
        assert!(p.element(q("5/12"), 3).is_ok());
        assert!(matches!(p.element(q("1/5"), 0), Err(GmnError::NotInRing { .. })));
        assert!(p.parse_element("(1/5, 0)").is_err());
        assert!(p.parse_element("1, 0").is_err());
    }

    #[test]
    fn multiplication_examples() {
        let p = g(2, 3);
        assert_eq!(&el(&p, "(1, 1)") * &el(&p, "(1, 0)"), el(&p, "(5/3, 1)"));
        let x = el(&p, "(7/4, -2)");
        assert_eq!(&x * &p.identity(), x);
        assert!((&x * &x.inv()).is_identity());
        let other = g(1, 2).a();
        assert!(matches!(x.try_mul(&other), Err(GmnError::ParamMismatch(..))));
    }

    #[test]
    fn inverse_conjugate_commutator_examples() {
        let p = g(2, 3);
        assert_eq!(el(&p, "(1, 1)").inv(), el(&p, "(-3/2, -1)"));
        let x = el(&p, "(4/9, 3)");
        assert!(x.commutator(&x).unwrap().is_identity());
        assert_eq!(el(&p, "(2, 0)").conjugate(&p.t()).unwrap(), el(&p, "(3, 0)"));
    }

    #[test]
    fn power_matches_repeated_product() {
        let p = g(3, 5);
        let x = el(&p, "(2/15, 2)");
        let mut acc = p.identity();
        for k in 0..7 {
            assert_eq!(x.pow(k), acc);
            assert_eq!(x.pow(-k), acc.inv());
            acc = &acc * &x;
        }
    }

    #[test]
    fn commutes_examples() {
        let p = g(2, 3);
        let x = el(&p, "(1, 0)");
        assert!(x.commutes(&x).unwrap());
        assert!(x.commutes(&el(&p, "(5, 0)")).unwrap());
        assert!(!x.commutes(&p.t()).unwrap());
    }

    #[test]
    fn centralizer_examples() {
        let p = g(2, 3);
        let x = el(&p, "(1, 0)");
        let c = x.centralizer_sample(0).unwrap().unwrap();
        assert!(c.in_h() && x.commutes(&c).unwrap());
        assert_eq!(x.centralizer_sample(1).unwrap(), None);
        let z2 = g(1, 1);
        let c = el(&z2, "(1, 0)").centralizer_sample(5).unwrap().unwrap();
        assert_eq!(c, el(&z2, "(0, 5)"));
        assert!(matches!(p.identity().centralizer_sample(1), Err(GmnError::IdentityInput)));
    }

    #[test]
    fn centralizer_of_non_h_element() {
        let p = g(2, 3);
        let x = el(&p, "(1, 1)");
        // Powers of x always centralize it.
        for k in -3..=3 {
            let c = x.centralizer_sample(k).unwrap().unwrap();
            assert_eq!(c, x.pow(k));
        }
        // (1,2) and t-exponent 1: y = (1 - 2/3)/(1 - 4/9) = 3/5, not in Z[1/6].
        assert_eq!(el(&p, "(1, 2)").centralizer_sample(1).unwrap(), None);
    }

    #[test]
    fn word_evaluation() {
        let p = g(2, 3);
        let w = crate::words::parse_word("t^-1 a^2 t", &crate::words::bs_alphabet()).unwrap();
        assert_eq!(p.eval(&w).unwrap(), el(&p, "(3, 0)"));
        assert!(p.eval(&Word::empty()).unwrap().is_identity());
        let g12 = g(1, 2);
        let w = crate::words::parse_word("a t", &crate::words::bs_alphabet()).unwrap();
        assert_eq!(g12.eval(&w).unwrap(), el(&g12, "(1, 1)"));
    }

    #[test]
    fn machine_integers_work() {
        let p = GmnParams::<i64>::from_ints(2, 3).unwrap();
        let x = p.parse_element("(1, 1)").unwrap();
        assert_eq!(x.inv().to_string(), "(-3/2, -1)");
    }
}
