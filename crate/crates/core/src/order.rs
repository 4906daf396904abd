//! Term orders, weight vectors, initial forms and `ord_w`.

use std::cmp::Ordering;

use thiserror::Error;

use crate::weyl::monomial::cmp_grevlex;
use crate::weyl::{Monomial, WeylContext, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("weight vector has {got} entries, context has {expected} generators")]
    Length { expected: usize, got: usize },
    #[error("weights of `{x}` and `{d}` sum to a negative number")]
    NegativePair { x: String, d: String },
    #[error("the homogenizing variable must have weight 0")]
    WeightedH,
    #[error("zero element has no initial form")]
    Zero,
    #[error("context has no auxiliary pair")]
    MissingAux,
}

/// An integer weight per generator. For every conjugate pair the two
/// weights sum to a nonnegative number, so leading forms stay multiplicative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    weights: Vec<i64>,
}

impl WeightVector {
    pub fn new(ctx: &WeylContext, weights: Vec<i64>) -> Result<Self, OrderError> {
        if weights.len() != ctx.num_gens() {
            return Err(OrderError::Length {
                expected: ctx.num_gens(),
                got: weights.len(),
            });
        }
        for &(x, d) in ctx.pairs() {
            if weights[x] + weights[d] < 0 {
                return Err(OrderError::NegativePair {
                    x: ctx.name(x),
                    d: ctx.name(d),
                });
            }
        }
        if let Some(h) = ctx.h() {
            if weights[h] != 0 {
                return Err(OrderError::WeightedH);
            }
        }
        Ok(WeightVector { weights })
    }

    pub fn zero(ctx: &WeylContext) -> Self {
        WeightVector {
            weights: vec![0; ctx.num_gens()],
        }
    }

    /// `v ↦ 1`, `∂_v ↦ -1`, everything else 0.
    pub fn integration(ctx: &WeylContext) -> Result<Self, OrderError> {
        let (v, dv) = ctx.v().zip(ctx.dv()).ok_or(OrderError::MissingAux)?;
        let mut weights = vec![0; ctx.num_gens()];
        weights[v] = 1;
        weights[dv] = -1;
        Ok(WeightVector { weights })
    }

    /// `x ↦ 0`, `∂ ↦ 1`: the order filtration by differential order.
    pub fn differential_order(ctx: &WeylContext) -> Self {
        let weights = (0..ctx.num_gens())
            .map(|i| i64::from(ctx.is_partial(i)))
            .collect();
        WeightVector { weights }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The same weights over the homogenized context (`h` gets weight 0).
    pub fn homogenized(&self, ctx: &WeylContext) -> Self {
        let mut weights = self.weights.clone();
        if !ctx.has_hom() {
            weights.push(0);
        }
        WeightVector { weights }
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        w_degree(self, m)
    }
}

/// Comparison rules on monomials of one context.
///
/// `Grevlex` and `Lex` read generators in context order. `Block` compares
/// the listed blocks one after another, each by grevlex restricted to the
/// block; the blocks must partition the generators. `Weight` compares
/// weighted degree and breaks ties with `tie`. `Graded` compares total degree
/// (including `h`) first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Grevlex,
    Lex,
    Block(Vec<Vec<usize>>),
    Weight {
        weights: WeightVector,
        tie: Box<TermOrder>,
    },
    Graded(Box<TermOrder>),
}

impl TermOrder {
    pub fn weighted(weights: WeightVector, tie: TermOrder) -> Self {
        TermOrder::Weight {
            weights,
            tie: Box::new(tie),
        }
    }

    /// Elimination order with the pairs of the listed spatial coordinates
    /// forming the dominant block. Both members of a pair are always
    /// eliminated together.
    pub fn eliminating_spatial(ctx: &WeylContext, coords: &[usize]) -> Self {
        let mut first: Vec<usize> = Vec::new();
        for &i in coords {
            first.push(ctx.x(i));
        }
        for &i in coords {
            first.push(ctx.d(i));
        }
        first.sort_unstable();
        let rest: Vec<usize> = (0..ctx.num_gens()).filter(|i| !first.contains(i)).collect();
        TermOrder::Block(vec![first, rest])
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(a.len(), b.len(), "monomials from different contexts");
        let (ea, eb) = (a.exponents(), b.exponents());
        match self {
            TermOrder::Grevlex => cmp_grevlex(ea, eb),
            TermOrder::Lex => ea.cmp(eb),
            TermOrder::Block(blocks) => {
                for block in blocks {
                    let ba: Vec<u32> = block.iter().map(|&i| ea[i]).collect();
                    let bb: Vec<u32> = block.iter().map(|&i| eb[i]).collect();
                    match cmp_grevlex(&ba, &bb) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            TermOrder::Weight { weights, tie } => w_degree(weights, a)
                .cmp(&w_degree(weights, b))
                .then_with(|| tie.compare(a, b)),
            TermOrder::Graded(inner) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| inner.compare(a, b)),
        }
    }

    /// Rows of an equivalent matrix order: `a > b` iff the vector of row
    /// products of `a` is lexicographically larger.
    pub fn matrix(&self, nvars: usize) -> Vec<Vec<i64>> {
        match self {
            TermOrder::Grevlex => grevlex_rows(&(0..nvars).collect::<Vec<_>>(), nvars),
            TermOrder::Lex => (0..nvars)
                .map(|i| {
                    let mut r = vec![0; nvars];
                    r[i] = 1;
                    r
                })
                .collect(),
            TermOrder::Block(blocks) => {
                blocks.iter().flat_map(|b| grevlex_rows(b, nvars)).collect()
            }
            TermOrder::Weight { weights, tie } => {
                let mut rows = vec![weights.weights.clone()];
                rows.extend(tie.matrix(nvars));
                rows
            }
            TermOrder::Graded(inner) => {
                let mut rows = vec![vec![1; nvars]];
                rows.extend(inner.matrix(nvars));
                rows
            }
        }
    }

    /// Whether every descending chain of monomials is finite.
    pub fn is_well_founded(&self) -> bool {
        match self {
            TermOrder::Grevlex | TermOrder::Lex | TermOrder::Block(_) | TermOrder::Graded(_) => {
                true
            }
            TermOrder::Weight { weights, tie } => {
                let w = weights.weights();
                if w.iter().all(|&x| x > 0) {
                    true
                } else {
                    w.iter().all(|&x| x >= 0) && tie.is_well_founded()
                }
            }
        }
    }

    /// Short preset name used in reports.
    pub fn name(&self) -> String {
        match self {
            TermOrder::Grevlex => "grevlex".into(),
            TermOrder::Lex => "lex".into(),
            TermOrder::Block(b) => format!("block{b:?}"),
            TermOrder::Weight { weights, tie } => {
                format!("weight{:?}>{}", weights.weights(), tie.name())
            }
            TermOrder::Graded(inner) => format!("degree>{}", inner.name()),
        }
    }
}

fn grevlex_rows(block: &[usize], nvars: usize) -> Vec<Vec<i64>> {
    let mut rows = Vec::with_capacity(block.len());
    let mut ones = vec![0; nvars];
    for &i in block {
        ones[i] = 1;
    }
    rows.push(ones);
    for &i in block.iter().skip(1).rev() {
        let mut r = vec![0; nvars];
        r[i] = -1;
        rows.push(r);
    }
    rows
}

pub fn w_degree(w: &WeightVector, m: &Monomial) -> i64 {
    w.weights
        .iter()
        .zip(m.exponents())
        .map(|(&wi, &e)| wi * i64::from(e))
        .sum()
}

/// Maximal weighted degree of a term of `p`.
pub fn max_w_degree(w: &WeightVector, p: &WeylElement) -> Result<i64, OrderError> {
    p.terms()
        .map(|(m, _)| w_degree(w, m))
        .max()
        .ok_or(OrderError::Zero)
}

/// Sum of the terms of `p` of maximal `w`-degree.
pub fn initial_form_w(w: &WeightVector, p: &WeylElement) -> Result<WeylElement, OrderError> {
    let top = max_w_degree(w, p)?;
    Ok(WeylElement::from_terms(
        p.context(),
        p.terms()
            .filter(|(m, _)| w_degree(w, m) == top)
            .map(|(m, c)| (m.clone(), c.clone())),
    ))
}

/// Whether every term of `p` has the same `w`-degree.
pub fn is_w_homogeneous(w: &WeightVector, p: &WeylElement) -> bool {
    let mut degrees = p.terms().map(|(m, _)| w_degree(w, m));
    match degrees.next() {
        None => true,
        Some(d) => degrees.all(|e| e == d),
    }
}

/// `max(v-exponent - ∂_v-exponent)` over the terms of `g`.
pub fn ord_w(g: &WeylElement) -> Result<i64, OrderError> {
    let ctx = g.context();
    let w = WeightVector::integration(ctx)?;
    max_w_degree(&w, g)
}

/// Leading monomial and coefficient of `p` under `order`.
pub fn leading_term<'a>(
    order: &TermOrder,
    p: &'a WeylElement,
) -> Option<(&'a Monomial, &'a num_rational::BigRational)> {
    p.terms().max_by(|a, b| order.compare(a.0, b.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_lex_block() {
        assert_eq!(
            TermOrder::Grevlex.compare(&mono(&[2, 0]), &mono(&[1, 1])),
            Ordering::Greater
        );
        assert_eq!(
            TermOrder::Lex.compare(&mono(&[0, 3]), &mono(&[1, 0])),
            Ordering::Less
        );
        let ctx = WeylContext::new(&["x"]).unwrap().with_aux();
        let elim = TermOrder::eliminating_spatial(&ctx, &[0]);
        // x vs v^5 Dv^5
        assert_eq!(
            elim.compare(&mono(&[1, 0, 0, 0]), &mono(&[0, 0, 5, 5])),
            Ordering::Greater
        );
    }

    #[test]
    fn weight_beats_degree() {
        let ctx = WeylContext::new(&["x"]).unwrap().with_aux();
        let w = WeightVector::integration(&ctx).unwrap();
        let o = TermOrder::weighted(w, TermOrder::Grevlex);
        assert_eq!(
            o.compare(&mono(&[0, 0, 1, 0]), &mono(&[2, 0, 0, 0])),
            Ordering::Greater
        );
        assert!(!o.is_well_founded());
        assert!(TermOrder::Graded(Box::new(o)).is_well_founded());
    }

    #[test]
    fn weight_validation() {
        let ctx = WeylContext::new(&["x"]).unwrap();
        assert!(WeightVector::new(&ctx, vec![-1, 0]).is_err());
        assert!(WeightVector::new(&ctx, vec![-1, 1]).is_ok());
        assert!(WeightVector::new(&ctx, vec![0]).is_err());
        let hctx = ctx.homogenized();
        assert_eq!(
            WeightVector::new(&hctx, vec![0, 0, 1]),
            Err(OrderError::WeightedH)
        );
    }

    fn elem(ctx: &WeylContext, terms: &[(&[u32], i64)]) -> WeylElement {
        WeylElement::from_terms(
            ctx,
            terms
                .iter()
                .map(|(e, c)| (mono(e), BigRational::from_integer((*c).into()))),
        )
    }

    #[test]
    fn initial_forms() {
        let ctx = WeylContext::new(&["x"]).unwrap().with_aux();
        let w = WeightVector::integration(&ctx).unwrap();
        // generators x, Dx, v, Dv
        let p = elem(&ctx, &[(&[0, 0, 0, 0], 1), (&[1, 0, 1, 0], -1)]);
        assert_eq!(initial_form_w(&w, &p).unwrap().to_string(), "-x*v");
        let lam = 3;
        let q = elem(
            &ctx,
            &[
                (&[1, 1, 0, 0], 1),
                (&[1, 0, 2, 1], -1),
                (&[0, 0, 0, 0], lam),
            ],
        );
        assert_eq!(initial_form_w(&w, &q).unwrap().to_string(), "-x*v^2*Dv");
        let r = elem(
            &ctx,
            &[
                (&[1, 1, 0, 0], 1),
                (&[0, 0, 1, 1], -1),
                (&[0, 0, 0, 0], 1 + lam),
            ],
        );
        assert_eq!(initial_form_w(&w, &r).unwrap(), r);
        assert_eq!(
            initial_form_w(&w, &WeylElement::zero(&ctx)),
            Err(OrderError::Zero)
        );
    }

    #[test]
    fn ord_w_examples() {
        let ctx = WeylContext::new(&["x"]).unwrap().with_aux();
        assert_eq!(ord_w(&elem(&ctx, &[(&[0, 0, 2, 1], 1)])).unwrap(), 1);
        assert_eq!(
            ord_w(&elem(&ctx, &[(&[0, 0, 0, 0], 1), (&[1, 0, 1, 0], -1)])).unwrap(),
            1
        );
        assert_eq!(ord_w(&elem(&ctx, &[(&[0, 0, 0, 1], 1)])).unwrap(), -1);
        assert!(ord_w(&WeylElement::zero(&ctx)).is_err());
    }

    #[test]
    fn matrix_agrees_with_compare() {
        let ctx = WeylContext::new(&["x", "y"])
            .unwrap()
            .with_aux()
            .homogenized();
        let w = WeightVector::integration(&ctx.dehomogenized())
            .unwrap()
            .homogenized(&ctx);
        let orders = [
            TermOrder::Grevlex,
            TermOrder::Lex,
            TermOrder::eliminating_spatial(&ctx, &[0, 1]),
            TermOrder::Graded(Box::new(TermOrder::weighted(w, TermOrder::Grevlex))),
        ];
        let ms: Vec<Monomial> = (0..60u32)
            .map(|s| {
                mono(&[
                    (s % 3),
                    (s / 3) % 2,
                    (s * 7) % 4,
                    (s / 5) % 3,
                    s % 2,
                    (s / 2) % 3,
                    (s / 7) % 2,
                ])
            })
            .collect();
        for o in &orders {
            let rows = o.matrix(ctx.num_gens());
            let key = |m: &Monomial| -> Vec<i64> {
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .zip(m.exponents())
                            .map(|(a, &e)| a * i64::from(e))
                            .sum()
                    })
                    .collect()
            };
            for a in &ms {
                for b in &ms {
                    assert_eq!(
                        o.compare(a, b),
                        key(a).cmp(&key(b)),
                        "{} {:?} {:?}",
                        o.name(),
                        a,
                        b
                    );
                }
            }
        }
    }
}
