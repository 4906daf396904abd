use num_rational::BigRational;
use num_traits::Zero;

use super::monomial::reorder_coefficient;
use super::{Monomial, WeylContext, WeylElement, WeylError};

/// One term `coeff * ∂_v^dv * v^v * rest` with the auxiliary derivative
/// written leftmost. `rest` carries no `v` or `∂_v` exponent and commutes
/// with the auxiliary pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiOrderedTerm {
    pub coeff: BigRational,
    pub dv: u32,
    pub v: u32,
    pub rest: Monomial,
}

impl AntiOrderedTerm {
    /// The term as a normally ordered element of `ctx`.
    pub fn to_element(&self, ctx: &WeylContext) -> WeylElement {
        let (vi, dvi) = (ctx.v().expect("aux pair"), ctx.dv().expect("aux pair"));
        let dv = WeylElement::generator(ctx, dvi).pow(self.dv);
        let v = WeylElement::generator(ctx, vi).pow(self.v);
        let rest = WeylElement::term(ctx, self.rest.clone(), self.coeff.clone());
        &(&dv * &v) * &rest
    }
}

/// Rewrites `p` so that every power of `∂_v` stands to the left of the
/// powers of `v`, using `v^b ∂_v^a = Σ_j (-1)^j j! C(a,j) C(b,j) ∂_v^{a-j} v^{b-j}`.
/// Terms are merged on `(dv, v, rest)` and zero terms dropped.
pub fn anti_normal_order_v(p: &WeylElement) -> Result<Vec<AntiOrderedTerm>, WeylError> {
    let ctx = p.context();
    let (Some(vi), Some(dvi)) = (ctx.v(), ctx.dv()) else {
        return Err(WeylError::MissingAux);
    };
    let mut acc: std::collections::BTreeMap<(u32, u32, Monomial), BigRational> = Default::default();
    for (m, c) in p.terms() {
        let (b, a) = (m.get(vi), m.get(dvi));
        let mut rest = m.clone();
        rest.set(vi, 0);
        rest.set(dvi, 0);
        for j in 0..=a.min(b) {
            let mut k = BigRational::from_integer(reorder_coefficient(a, b, j));
            if j % 2 == 1 {
                k = -k;
            }
            let entry = acc
                .entry((a - j, b - j, rest.clone()))
                .or_insert_with(BigRational::zero);
            *entry += c * k;
        }
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((dv, v, rest), coeff)| AntiOrderedTerm { coeff, dv, v, rest })
        .collect())
}
