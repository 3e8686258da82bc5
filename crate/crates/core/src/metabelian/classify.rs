use serde::Serialize;

use super::{GmnElement, GmnError, GmnParams};
use crate::exact::Ratio;
use crate::scalar::Scalar;

/// Isomorphism type of `⟨(x, 0), (y, p)⟩ ≤ G(m,n)`: the group
/// `G(m', n')` with `m'/n' = (m/n)^p` in lowest terms.
pub fn gmn_subgroup_params<I: Scalar>(
    x: &Ratio<I>,
    p: i64,
    ambient: &GmnParams<I>,
) -> Result<GmnParams<I>, GmnError> {
    if x.is_zero() {
        return Err(GmnError::Degenerate(
            "x = 0: the subgroup is the cyclic group generated by (y, p)",
        ));
    }
    if p == 0 {
        return Err(GmnError::Degenerate(
            "p = 0: the subgroup lies in H and is locally cyclic",
        ));
    }
    if !ambient.contains(x) {
        return Err(GmnParams::<I>::not_in_ring(ambient, x));
    }
    let r = ambient.ratio_pow(p);
    GmnParams::new(r.numer().clone(), r.denom().clone())
}

impl<I: Scalar> GmnParams<I> {
    fn not_in_ring(&self, x: &Ratio<I>) -> GmnError {
        GmnError::NotInRing {
            x: x.to_string(),
            mn: (self.m().clone() * self.n().clone()).to_string(),
        }
    }
}

/// Outcome of [`two_gen_classify`] for `g1 = (a/b, p)`, `g2 = (c/d, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Classification<I: Scalar> {
    /// `p = q = 0`: both generators lie in `H`, so `⟨g1, g2⟩` is locally cyclic.
    InsideH,
    /// `g1^q · g2^{-p}` is trivial, i.e. `g1^{e1} = g2^{e2} = common`
    /// with `(e1, e2) = (q, p)`.
    CommensurableCyclic {
        e1: i64,
        e2: i64,
        common: GmnElement<I>,
    },
    /// `d = g1^q · g2^{-p}` is a nontrivial element of `H`, and
    /// `⟨base, d⟩ ≅ G(params)` where `base` is the generator (1 or 2) with
    /// nonzero t-exponent.
    ContainsGildenhuys {
        d: GmnElement<I>,
        base: u8,
        params: GmnParams<I>,
    },
}

impl<I: Scalar> Classification<I> {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::InsideH => "inside-h",
            Classification::CommensurableCyclic { .. } => "commensurable-cyclic",
            Classification::ContainsGildenhuys { .. } => "contains-gildenhuys",
        }
    }
}

/// Classifies a two-generator subgroup of `G(m,n)` by the element
/// `d := g1^q · g2^{-p}`, whose t-exponent `pq − qp` vanishes so it lies in
/// `H`. The product order (`g1^q` first) is a fixed convention; either
/// order lands in `H`.
pub fn two_gen_classify<I: Scalar>(
    g1: &GmnElement<I>,
    g2: &GmnElement<I>,
) -> Result<Classification<I>, GmnError> {
    if g1.params() != g2.params() {
        return Err(GmnError::ParamMismatch(g1.params().to_string(), g2.params().to_string()));
    }
    let (p, q) = (g1.p(), g2.p());
    if p == 0 && q == 0 {
        return Ok(Classification::InsideH);
    }
    let lhs = g1.pow(q);
    let d = &lhs * &g2.pow(-p);
    debug_assert!(d.in_h());
    if d.is_identity() {
        return Ok(Classification::CommensurableCyclic { e1: q, e2: p, common: lhs });
    }
    let (base, exp) = if p != 0 { (1, p) } else { (2, q) };
    let params = gmn_subgroup_params(d.x(), exp, g1.params())?;
    Ok(Classification::ContainsGildenhuys { d, base, params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = GmnParams<BigInt>;

    fn g23() -> P {
        P::from_ints(2, 3).unwrap()
    }

    fn q(s: &str) -> Ratio<BigInt> {
        s.parse().unwrap()
    }

    #[test]
    fn subgroup_params_examples() {
        let g = g23();
        assert_eq!(gmn_subgroup_params(&q("1"), 1, &g).unwrap(), g);
        assert_eq!(gmn_subgroup_params(&q("1"), 2, &g).unwrap(), P::from_ints(4, 9).unwrap());
        assert_eq!(gmn_subgroup_params(&q("1"), -1, &g).unwrap(), P::from_ints(3, 2).unwrap());
        assert!(matches!(gmn_subgroup_params(&q("0"), 1, &g), Err(GmnError::Degenerate(_))));
        assert!(matches!(gmn_subgroup_params(&q("1"), 0, &g), Err(GmnError::Degenerate(_))));
        assert!(matches!(gmn_subgroup_params(&q("1/5"), 1, &g), Err(GmnError::NotInRing { .. })));
    }

    #[test]
    fn worked_examples() {
        let g = g23();
        let e = |s: &str| g.parse_element(s).unwrap();
        match two_gen_classify(&e("(1/2, 1)"), &e("(1/3, 1)")).unwrap() {
            Classification::ContainsGildenhuys { d, base, params } => {
                assert_eq!(d, e("(1/6, 0)"));
                assert_eq!(base, 1);
                assert_eq!(params, g23());
            }
            other => panic!("unexpected {other:?}"),
        }
        let g1 = e("(1, 1)");
        let g2 = e("(5/3, 2)");
        assert_eq!(g1.pow(2), g2);
        match two_gen_classify(&g1, &g2).unwrap() {
            Classification::CommensurableCyclic { e1, e2, common } => {
                assert_eq!((e1, e2), (2, 1));
                assert_eq!(g1.pow(e1), common);
                assert_eq!(g2.pow(e2), common);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            two_gen_classify(&e("(1, 0)"), &e("(1/2, 0)")).unwrap(),
            Classification::InsideH
        );
    }

    #[test]
    fn one_generator_in_h() {
        let g = g23();
        let e = |s: &str| g.parse_element(s).unwrap();
        // g1 ∈ H, g2 = t^-2: d = g1^-2 = (-2, 0), base is g2, exponent -2.
        match two_gen_classify(&e("(1, 0)"), &e("(0, -2)")).unwrap() {
            Classification::ContainsGildenhuys { d, base, params } => {
                assert_eq!(d, e("(-2, 0)"));
                assert_eq!(base, 2);
                assert_eq!(params, P::from_ints(9, 4).unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
        // Identity generator falls into the commensurable case.
        let c = two_gen_classify(&g.identity(), &e("(0, 3)")).unwrap();
        assert_eq!(c.name(), "commensurable-cyclic");
    }
}
