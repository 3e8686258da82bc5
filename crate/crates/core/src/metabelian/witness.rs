//! Explicit elements showing `G(m,n)` is neither weakly AH nor CSA.

use serde::Serialize;

use super::{GmnElement, GmnError, GmnParams};
use crate::scalar::Scalar;

/// `t · x^{e1} · t⁻¹ = x^{e2}` with `|e1| ≠ |e2|`.
///
/// Under this crate's convention `t·(y,0)·t⁻¹ = (y·m/n, 0)`, so with
/// `x = (1,0)`, `t = (0,1)` the exponents are `(e1, e2) = (n, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakAhWitness<I: Scalar> {
    pub x: GmnElement<I>,
    pub t: GmnElement<I>,
    pub e1: i64,
    pub e2: i64,
}

impl<I: Scalar> WeakAhWitness<I> {
    /// Recomputes `conjugate(x^{e1}, t⁻¹)` and compares with `x^{e2}`.
    pub fn verify(&self) -> Result<bool, GmnError> {
        let lhs = self.x.pow(self.e1).conjugate(&self.t.inv())?;
        Ok(lhs == self.x.pow(self.e2) && self.e1.unsigned_abs() != self.e2.unsigned_abs())
    }
}

/// `None` exactly when `m = n`, which for coprime positive parameters is
/// `G(1,1) = Z²`; that group fails weak AH through its `Z²` subgroup
/// instead.
pub fn weak_ah_witness<I: Scalar>(params: &GmnParams<I>) -> Option<WeakAhWitness<I>> {
    if params.m() == params.n() {
        return None;
    }
    Some(WeakAhWitness {
        x: params.a(),
        t: params.t(),
        e1: params.n().to_i64()?,
        e2: params.m().to_i64()?,
    })
}

/// `h ∈ H∖{1}` and `g ∉ H` with `g⁻¹hg ∈ H∖{1}`: the maximal abelian
/// subgroup `H` is not malnormal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsaWitness<I: Scalar> {
    pub h: GmnElement<I>,
    pub g: GmnElement<I>,
}

impl<I: Scalar> CsaWitness<I> {
    pub fn verify(&self) -> Result<bool, GmnError> {
        let c = self.h.conjugate(&self.g)?;
        Ok(self.h.in_h() && !self.h.is_identity() && !self.g.in_h() && c.in_h() && !c.is_identity())
    }
}

/// `h = (n, 0)`, `g = t`; `None` for `Z²`, where `H` is not proper.
pub fn csa_violation_witness<I: Scalar>(params: &GmnParams<I>) -> Option<CsaWitness<I>> {
    if params.is_abelian() {
        return None;
    }
    let h = params
        .h(crate::exact::Ratio::from_integer(params.n().clone()))
        .expect("integers lie in H");
    Some(CsaWitness { h, g: params.t() })
}
