//! Constructive membership of `1/n^k` and `1/m^k` in `⟨a, t⟩ ≤ G(m,n)`.
//!
//! From `m^k·q + n^k·q' = 1` we get `q·(m/n)^k + q' = 1/n^k`, and since
//! `t^k a t^{-k} = (m^k/n^k, 0)` the word `t^k a^q t^{-k} a^{q'}` evaluates
//! to `(1/n^k, 0)`. Symmetrically `t^{-k} a^{q'} t^k a^q` evaluates to
//! `(1/m^k, 0)`. The same words work in any subgroup `⟨(x,0), (y,p)⟩` of a
//! larger `G`, with `a ↦ (x,0)`, `t ↦ (y,p)` and target scaled by `x`.

use std::fmt;

use serde::Serialize;

use super::{GmnElement, GmnError, GmnParams, GEN_A, GEN_T};
use crate::exact::Ratio;
use crate::scalar::Scalar;
use crate::words::{bs_alphabet, format_word, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// Target `1/m^k`.
    M,
    /// Target `1/n^k`.
    N,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::M => "m-side",
            Side::N => "n-side",
        })
    }
}

/// Extended Euclid: `(g, s, t)` with `a·s + b·t = g = gcd(a, b) >= 0`.
pub fn egcd<I: Scalar>(a: &I, b: &I) -> (I, I, I) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (I::one(), I::zero());
    let (mut t0, mut t1) = (I::zero(), I::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = r0 - q.clone() * r1.clone();
        let s2 = s0 - q.clone() * s1.clone();
        let t2 = t0 - q * t1.clone();
        (r0, r1) = (r1, r2);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BezoutCertificate<I: Scalar> {
    pub params: GmnParams<I>,
    pub k: u32,
    pub side: Side,
    /// Coefficient of `m^k`, normalised to `0 <= q < n^k`.
    #[serde(serialize_with = "display")]
    pub q: I,
    /// Coefficient of `n^k`.
    #[serde(serialize_with = "display")]
    pub q_prime: I,
    /// `1/n^k` or `1/m^k`.
    pub target: Ratio<I>,
    /// Group word over `{a, t}` whose value is `(target, 0)`.
    #[serde(serialize_with = "word_text")]
    pub word: Word,
}

fn display<I: Scalar, S: serde::Serializer>(v: &I, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn word_text<S: serde::Serializer>(w: &Word, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_word(w, &bs_alphabet()))
}

/// Bezout pair and group word realising `1/n^k` (`Side::N`) or `1/m^k`
/// (`Side::M`) in `sub = G(m,n)`. `k = 0` gives the unit target.
pub fn bezout_certificate<I: Scalar>(
    sub: &GmnParams<I>,
    k: u32,
    side: Side,
) -> Result<BezoutCertificate<I>, GmnError> {
    if sub.is_abelian() {
        return Err(GmnError::NoBezoutContent);
    }
    let mk = sub.m().pow_u(k as u64);
    let nk = sub.n().pow_u(k as u64);
    let (g, s, _) = egcd(&mk, &nk);
    debug_assert!(g.is_one());
    let q = s.mod_floor(&nk);
    let q_prime = (I::one() - mk.clone() * q.clone()) / nk.clone();
    let ki = k as i64;
    let qi = q.to_i64();
    let qpi = q_prime.to_i64();
    let (Some(qi), Some(qpi)) = (qi, qpi) else {
        return Err(GmnError::Degenerate("Bezout coefficients exceed the word exponent range"));
    };
    let (target, word) = match side {
        Side::N => (
            Ratio::new(I::one(), nk).expect("n >= 1"),
            Word::from_pairs([(GEN_T, ki), (GEN_A, qi), (GEN_T, -ki), (GEN_A, qpi)]),
        ),
        Side::M => (
            Ratio::new(I::one(), mk).expect("m >= 1"),
            Word::from_pairs([(GEN_T, -ki), (GEN_A, qpi), (GEN_T, ki), (GEN_A, qi)]),
        ),
    };
    Ok(BezoutCertificate { params: sub.clone(), k, side, q, q_prime, target, word })
}

impl<I: Scalar> BezoutCertificate<I> {
    /// `m^k·q + n^k·q' = 1`.
    pub fn bezout_holds(&self) -> bool {
        let mk = self.params.m().pow_u(self.k as u64);
        let nk = self.params.n().pow_u(self.k as u64);
        (mk * self.q.clone() + nk * self.q_prime.clone()).is_one()
    }

    /// `q·(m/n)^k + q' = 1/n^k`, or `q'·(n/m)^k + q = 1/m^k`, in exact rationals.
    pub fn evaluation_holds(&self) -> bool {
        let k = self.k as i64;
        let q = Ratio::from_integer(self.q.clone());
        let qp = Ratio::from_integer(self.q_prime.clone());
        let lhs = match self.side {
            Side::N => &(&q * &self.params.ratio_pow(k)) + &qp,
            Side::M => &(&qp * &self.params.ratio_pow(-k)) + &q,
        };
        lhs == self.target
    }

    /// Evaluates the word in `G(m,n)` and compares with `(target, 0)`.
    pub fn word_holds(&self) -> Result<bool, GmnError> {
        let got = self.params.eval(&self.word)?;
        Ok(got.in_h() && got.x() == &self.target)
    }

    /// Evaluates the same word in a subgroup `⟨gen_x, gen_y⟩` where
    /// `gen_x = (x, 0)` and `gen_y` acts on `H` as `self.params` prescribes;
    /// the expected value is `(x·target, 0)`.
    pub fn word_holds_in(&self, gen_x: &GmnElement<I>, gen_y: &GmnElement<I>) -> Result<bool, GmnError> {
        let ambient = gen_x.params();
        let got = ambient.eval_with(&self.word, &[gen_x.clone(), gen_y.clone()])?;
        Ok(got.in_h() && got.x() == &(gen_x.x() * &self.target))
    }

    pub fn verify(&self) -> Result<bool, GmnError> {
        Ok(self.bezout_holds() && self.evaluation_holds() && self.word_holds()?)
    }

    pub fn word_text(&self) -> String {
        format_word(&self.word, &bs_alphabet())
    }
}
