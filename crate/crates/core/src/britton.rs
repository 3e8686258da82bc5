//! Words in `BS(m,n) = ⟨a, t | t⁻¹ a^m t = a^n⟩` and the word problem via
//! Britton's lemma.
//!
//! A word is stored as syllables `a^{lead} t^{ε1} a^{e1} t^{ε2} a^{e2} ...`.
//! Reduction removes pinches `t⁻¹ a^{cm} t → a^{cn}` and
//! `t a^{cn} t⁻¹ → a^{cm}` until none remain. Britton's lemma says a word
//! equal to the identity that still contains a `t` has a pinch, so a
//! pinch-free word is trivial iff it is `a^0`. Reduced forms are not
//! canonical; compare elements with [`equal`], never by reduced words.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::metabelian::{GmnElement, GmnError, GmnParams};
use crate::scalar::Scalar;
use crate::words::{bs_alphabet, parse_word, GenId, ParseError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BsError {
    #[error("BS(m,n) needs m != 0 and n != 0")]
    ZeroParameter,
    #[error("cannot parse group `{0}`")]
    ParseParams(String),
    #[error(transparent)]
    Word(#[from] ParseError),
    #[error("Z² witness needs |m| > 1 and |n| > 1, got BS({m},{n})")]
    Z2Precondition { m: String, n: String },
    #[error("generator #{0} is neither a nor t")]
    ForeignGenerator(u32),
    #[error("a-exponent too large for a machine word")]
    Overflow,
    #[error(transparent)]
    Metabelian(#[from] GmnError),
}

/// Nonzero (possibly negative, not necessarily coprime) parameters of `BS(m,n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BsParams<I = BigInt> {
    m: I,
    n: I,
}

impl<I: Scalar> BsParams<I> {
    pub fn new(m: I, n: I) -> Result<Self, BsError> {
        if m.is_zero() || n.is_zero() {
            return Err(BsError::ZeroParameter);
        }
        Ok(BsParams { m, n })
    }

    pub fn from_ints(m: i64, n: i64) -> Result<Self, BsError> {
        Self::new(I::from_int(m), I::from_int(n))
    }

    pub fn m(&self) -> &I {
        &self.m
    }

    pub fn n(&self) -> &I {
        &self.n
    }

    /// The defining relator `t⁻¹ a^m t a^{-n}`.
    pub fn relator(&self) -> BsWord<I> {
        BsWord {
            lead: I::zero(),
            tail: vec![(-1, self.m.clone()), (1, -self.n.clone())],
        }
    }
}

impl<I: Scalar> fmt::Display for BsParams<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BS({},{})", self.m, self.n)
    }
}

impl<I: Scalar> FromStr for BsParams<I> {
    type Err = BsError;

    fn from_str(s: &str) -> Result<Self, BsError> {
        let bad = || BsError::ParseParams(s.to_string());
        let body = s
            .trim()
            .strip_prefix("BS(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (m, n) = body.split_once(',').ok_or_else(bad)?;
        let m: I = m.trim().parse().map_err(|_| bad())?;
        let n: I = n.trim().parse().map_err(|_| bad())?;
        Self::new(m, n)
    }
}

impl<I: Scalar> Serialize for BsParams<I> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `a^{lead} t^{ε1} a^{e1} ... t^{εk} a^{ek}` with each `εi = ±1`.
///
/// Adjacent `t`-letters are kept separate; a zero `ei` between two
/// opposite letters is a pinch in every `BS(m,n)`, so only words that
/// went through [`britton_reduce`] are guaranteed free of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BsWord<I = BigInt> {
    lead: I,
    tail: Vec<(i8, I)>,
}

impl<I: Scalar> BsWord<I> {
    pub fn empty() -> Self {
        BsWord { lead: I::zero(), tail: Vec::new() }
    }

    pub fn a_pow(k: I) -> Self {
        BsWord { lead: k, tail: Vec::new() }
    }

    pub fn t_pow(k: i64) -> Self {
        let s: i8 = if k < 0 { -1 } else { 1 };
        BsWord {
            lead: I::zero(),
            tail: (0..k.unsigned_abs()).map(|_| (s, I::zero())).collect(),
        }
    }

    pub fn from_syllables(lead: I, tail: Vec<(i8, I)>) -> Self {
        assert!(tail.iter().all(|(s, _)| *s == 1 || *s == -1), "t-signs must be ±1");
        BsWord { lead, tail }
    }

    pub fn lead(&self) -> &I {
        &self.lead
    }

    pub fn tail(&self) -> &[(i8, I)] {
        &self.tail
    }

    /// Number of `t^{±1}` letters.
    pub fn t_length(&self) -> usize {
        self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lead.is_zero() && self.tail.is_empty()
    }

    /// Converts a word over `{a, t}` (ids as in [`bs_alphabet`]).
    pub fn from_word(w: &Word, a: GenId, t: GenId) -> Result<Self, BsError> {
        let mut out = Self::empty();
        for l in w.letters() {
            if l.gen == a {
                out.push_a(I::from_int(l.exp));
            } else if l.gen == t {
                for _ in 0..l.exp.unsigned_abs() {
                    out.tail.push((l.exp.signum() as i8, I::zero()));
                }
            } else {
                return Err(BsError::ForeignGenerator(l.gen.0));
            }
        }
        Ok(out)
    }

    /// Parses text over the generators `a` and `t`.
    pub fn parse(text: &str) -> Result<Self, BsError> {
        let w = parse_word(text, &bs_alphabet())?;
        Self::from_word(&w, GenId(0), GenId(1))
    }

    /// Back to a free word over [`bs_alphabet`]; fails if an a-exponent
    /// does not fit in an `i64`.
    pub fn to_word(&self) -> Result<Word, BsError> {
        let a = |e: &I| e.to_i64().ok_or(BsError::Overflow);
        let mut pairs = vec![(GenId(0), a(&self.lead)?)];
        for (s, e) in &self.tail {
            pairs.push((GenId(1), *s as i64));
            pairs.push((GenId(0), a(e)?));
        }
        Ok(Word::from_pairs(pairs))
    }

    fn push_a(&mut self, k: I) {
        match self.tail.last_mut() {
            Some((_, e)) => *e = e.clone() + k,
            None => self.lead = self.lead.clone() + k,
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.push_a(other.lead.clone());
        out.tail.extend(other.tail.iter().cloned());
        out
    }

    pub fn inverse(&self) -> Self {
        // (a^l t^s1 a^e1 ... t^sk a^ek)^-1 = a^-ek t^-sk ... a^-e1 t^-s1 a^-l
        let mut out = Self::a_pow(-self.tail.last().map_or(self.lead.clone(), |(_, e)| e.clone()));
        let k = self.tail.len();
        for i in (0..k).rev() {
            let before = if i == 0 { self.lead.clone() } else { self.tail[i - 1].1.clone() };
            out.tail.push((-self.tail[i].0, -before));
        }
        out
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &Self, v: &Self) -> Self {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    /// True iff no subword `t^{ε} a^s t^{-ε}` is a pinch for `params`.
    pub fn is_pinch_free(&self, params: &BsParams<I>) -> bool {
        self.tail
            .windows(2)
            .all(|w| pinch(params, w[0].0, &w[0].1, w[1].0).is_none())
    }

    /// Evaluates under `a ↦ (1,0)`, `t ↦ (0,1)` in `G(m,n)`. This is a
    /// homomorphism from `BS(m,n)`, and an isomorphism for `BS(1,k) → G(1,k)`.
    pub fn eval_in(&self, g: &GmnParams<I>) -> GmnElement<I> {
        let a = |e: &I| {
            g.h(crate::exact::Ratio::from_integer(e.clone()))
                .expect("integers lie in H")
        };
        let t = g.t();
        let t_inv = t.inv();
        let mut acc = a(&self.lead);
        for (s, e) in &self.tail {
            acc = &acc * if *s > 0 { &t } else { &t_inv };
            acc = &acc * &a(e);
        }
        acc
    }
}

/// Returns the replacement exponent if `t^{s1} a^{exp} t^{s2}` is a pinch.
fn pinch<I: Scalar>(params: &BsParams<I>, s1: i8, exp: &I, s2: i8) -> Option<I> {
    match (s1, s2) {
        (-1, 1) if exp.is_multiple_of(&params.m) => Some(exp.clone() / params.m.clone() * params.n.clone()),
        (1, -1) if exp.is_multiple_of(&params.n) => Some(exp.clone() / params.n.clone() * params.m.clone()),
        _ => None,
    }
}

/// Removes pinches until none are left. Scanning left to right with a
/// stack collapses each pinch as soon as its closing `t`-letter arrives
/// (leftmost-innermost order). Each collapse removes two `t`-letters.
pub fn britton_reduce<I: Scalar>(w: &BsWord<I>, params: &BsParams<I>) -> BsWord<I> {
    let mut lead = w.lead.clone();
    let mut stack: Vec<(i8, I)> = Vec::with_capacity(w.tail.len());
    for (s, e) in &w.tail {
        let collapsed = stack
            .last()
            .and_then(|(s0, mid)| pinch(params, *s0, mid, *s));
        match collapsed {
            Some(replacement) => {
                stack.pop();
                let add = replacement + e.clone();
                match stack.last_mut() {
                    Some((_, top)) => *top = top.clone() + add,
                    None => lead = lead + add,
                }
            }
            None => stack.push((*s, e.clone())),
        }
    }
    BsWord { lead, tail: stack }
}

pub fn is_trivial<I: Scalar>(w: &BsWord<I>, params: &BsParams<I>) -> bool {
    let r = britton_reduce(w, params);
    r.tail.is_empty() && r.lead.is_zero()
}

/// Decides `u = v` in `BS(m,n)` by testing `u·v⁻¹` for triviality.
pub fn equal<I: Scalar>(u: &BsWord<I>, v: &BsWord<I>, params: &BsParams<I>) -> bool {
    is_trivial(&u.concat(&v.inverse()), params)
}

/// Image of a `BS(1,k)` word in `G(1,k)`.
pub fn eval_metabelian<I: Scalar>(w: &BsWord<I>, k: &I) -> Result<GmnElement<I>, BsError> {
    let g = GmnParams::new(I::one(), k.clone())?;
    Ok(w.eval_in(&g))
}

impl<I: Scalar> fmt::Display for BsWord<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let push_a = |e: &I, parts: &mut Vec<String>| {
            if e.is_one() {
                parts.push("a".into());
            } else if !e.is_zero() {
                parts.push(format!("a^{e}"));
            }
        };
        push_a(&self.lead, &mut parts);
        for (s, e) in &self.tail {
            parts.push(if *s > 0 { "t".into() } else { "t^-1".into() });
            push_a(e, &mut parts);
        }
        f.write_str(&parts.join(" "))
    }
}

/// Outcome of the `⟨t⁻¹ a t a, a^n⟩ ≅ Z²` check in `BS(m,n)`.
///
/// The commutator check is exact. Faithfulness is only checked on the box
/// `|i|, |j| <= bound`, so `passed` is bounded evidence of rank 2, not a proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Z2Report<I: Scalar> {
    pub params: BsParams<I>,
    pub u: String,
    pub v: String,
    pub commutator_trivial: bool,
    pub bound: u32,
    pub pairs_checked: usize,
    /// Exponent pairs `(i, j) ≠ (0,0)` with `u^i v^j = 1`; empty on success.
    pub trivial_pairs: Vec<(i64, i64)>,
    pub passed: bool,
}

pub fn z2_witness<I: Scalar>(params: &BsParams<I>, bound: u32) -> Result<Z2Report<I>, BsError> {
    if params.m.abs() <= I::one() || params.n.abs() <= I::one() {
        return Err(BsError::Z2Precondition { m: params.m.to_string(), n: params.n.to_string() });
    }
    let u = BsWord::from_syllables(I::zero(), vec![(-1, I::one()), (1, I::one())]);
    let v = BsWord::a_pow(params.n.clone());
    let commutator_trivial = is_trivial(&BsWord::commutator(&u, &v), params);
    let b = bound as i64;
    let mut trivial_pairs = Vec::new();
    let mut pairs_checked = 0;
    for i in -b..=b {
        let ui = u.pow(i);
        for j in -b..=b {
            if i == 0 && j == 0 {
                continue;
            }
            pairs_checked += 1;
            if is_trivial(&ui.concat(&v.pow(j)), params) {
                trivial_pairs.push((i, j));
            }
        }
    }
    let passed = commutator_trivial && trivial_pairs.is_empty();
    Ok(Z2Report {
        params: params.clone(),
        u: u.to_string(),
        v: v.to_string(),
        commutator_trivial,
        bound,
        pairs_checked,
        trivial_pairs,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type W = BsWord<BigInt>;
    type P = BsParams<BigInt>;

    fn bs(m: i64, n: i64) -> P {
        P::from_ints(m, n).unwrap()
    }

    fn w(s: &str) -> W {
        W::parse(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let p = bs(2, 3);
        assert_eq!(britton_reduce(&w("t^-1 a^2 t"), &p), w("a^3"));
        assert_eq!(britton_reduce(&W::empty(), &p), W::empty());
        let u = w("t^-1 a t a");
        let v = w("a^3");
        let c = W::commutator(&u, &v);
        assert!(britton_reduce(&c, &p).is_empty());
    }

    #[test]
    fn reduce_is_pinch_free_and_not_over_eager() {
        let p = bs(2, 3);
        let r = britton_reduce(&w("t^-1 a t"), &p);
        assert_eq!(r, w("t^-1 a t"));
        assert!(r.is_pinch_free(&p));
        assert!(!w("t a^3 t^-1").is_pinch_free(&p));
        assert_eq!(britton_reduce(&w("t a^3 t^-1"), &p), w("a^2"));
        // Nested pinches collapse from the inside out.
        assert_eq!(britton_reduce(&w("t^-1 t^-1 a^4 t t"), &bs(2, 3)), w("a^9"));
        assert_eq!(britton_reduce(&w("t^-1 t^-1 a^2 t t"), &bs(2, 3)), w("t^-1 a^3 t"));
        assert_eq!(britton_reduce(&w("t^-1 t^-1 a^4 t t"), &bs(1, 2)), w("a^16"));
    }

    #[test]
    fn triviality_examples() {
        let p = bs(2, 3);
        assert!(is_trivial(&w("a t t^-1 a^-1"), &p));
        assert!(is_trivial(&w("t^-1 a^2 t a^-3"), &p));
        assert!(!is_trivial(&w("t^-1 a t"), &p));
        assert!(is_trivial(&p.relator(), &p));
    }

    #[test]
    fn equality_examples() {
        let p = bs(2, 3);
        let x = w("a t^-1 a^5 t a^2");
        assert!(equal(&x, &x, &p));
        assert!(equal(&w("t^-1 a^2 t"), &w("a^3"), &p));
        assert!(!equal(&w("a"), &w("t"), &p));
    }

    #[test]
    fn negative_parameters() {
        let p = bs(2, -3);
        assert_eq!(britton_reduce(&w("t^-1 a^4 t"), &p), w("a^-6"));
        assert_eq!(britton_reduce(&w("t a^6 t^-1"), &p), w("a^-4"));
        let p = bs(-1, 1);
        assert!(is_trivial(&w("t^-1 a t a"), &p));
    }

    #[test]
    fn inverse_and_display() {
        let x = w("a^2 t a^-1 t^-1 a^3");
        assert_eq!(x.inverse(), w("a^-3 t a t^-1 a^-2"));
        assert_eq!(x.to_string(), "a^2 t a^-1 t^-1 a^3");
        assert_eq!(W::empty().to_string(), "");
        assert!(x.concat(&x.inverse()).t_length() == 4);
        assert!(is_trivial(&x.concat(&x.inverse()), &bs(5, 7)));
        assert_eq!(x.to_word().unwrap(), parse_word("a^2 t a^-1 t^-1 a^3", &bs_alphabet()).unwrap());
    }

    #[test]
    fn metabelian_images() {
        let k = BigInt::from(2);
        assert_eq!(eval_metabelian(&w("a"), &k).unwrap().to_string(), "(1, 0)");
        assert!(eval_metabelian(&w("t^-1 a t a^-2"), &k).unwrap().is_identity());
        assert_eq!(eval_metabelian(&w("a t"), &k).unwrap().to_string(), "(1, 1)");
    }

    #[test]
    fn z2_examples() {
        let r = z2_witness(&bs(2, 3), 4).unwrap();
        assert!(r.commutator_trivial);
        assert_eq!(r.pairs_checked, 80);
        assert!(r.passed);
        assert!(z2_witness(&bs(3, 5), 3).unwrap().passed);
        assert!(matches!(z2_witness(&bs(1, 2), 4), Err(BsError::Z2Precondition { .. })));
        assert!(z2_witness(&bs(-2, 3), 2).unwrap().passed);
    }

    #[test]
    fn params_parse() {
        assert_eq!("BS(2, -3)".parse::<P>().unwrap(), bs(2, -3));
        assert!(matches!("BS(0,3)".parse::<P>(), Err(BsError::ZeroParameter)));
        assert!("G(2,3)".parse::<P>().is_err());
    }
}
