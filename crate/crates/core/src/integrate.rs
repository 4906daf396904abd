//! Integration along `∂_v`: the submodule generated by `G_k` in
//! `⊕_{b≤k} D v^b` and the annihilator of the coset of `v^k`.

use thiserror::Error;

use crate::groebner::{
    buchberger_module, FreeModuleElement, GroebnerError, Limits, ModuleGroebnerBasis, ModuleOrder,
};
use crate::order::{ord_w, OrderError, TermOrder};
use crate::twist::{normal_form_mod_right_dv, TwistError};
use crate::weyl::{WeylContext, WeylElement, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegrateError {
    #[error("normal form of v^{i}*g_{j} has a component above v^{k}")]
    ComponentAboveK { i: usize, j: usize, k: usize },
    #[error("module element is not over the plain algebra")]
    NotPlain,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// `G_k`: the nonzero normal forms of `v^i g_j` modulo `∂_v D_v` for
/// `0 ≤ i ≤ k - ord_w(g_j)`, as elements of `D^{k+1}`.
pub fn build_gk(g: &[WeylElement], k: usize) -> Result<Vec<FreeModuleElement>, IntegrateError> {
    let mut out = Vec::new();
    for (j, gj) in g.iter().enumerate() {
        if gj.is_zero() {
            continue;
        }
        let ctx = gj.context();
        let v = WeylElement::generator(ctx, ctx.v().ok_or(WeylError::MissingAux)?);
        let top = k as i64 - ord_w(gj)?;
        let mut shifted = gj.clone();
        for i in 0..=top.max(-1) {
            let i = i as usize;
            if i > 0 {
                shifted = &v * &shifted;
            }
            let nf = normal_form_mod_right_dv(&shifted)?;
            if nf.is_zero() {
                continue;
            }
            if nf.support().iter().any(|&b| b > k) {
                return Err(IntegrateError::ComponentAboveK { i, j, k });
            }
            let mut comps = nf.components().to_vec();
            comps.resize(k + 1, WeylElement::zero(nf.context()));
            let elem = FreeModuleElement::new(nf.context(), comps)?;
            if !out.contains(&elem) {
                out.push(elem);
            }
        }
    }
    Ok(out)
}

/// Annihilator of `v^k` in `D^{k+1} / D·G_k`.
#[derive(Clone, Debug)]
pub struct Annihilator {
    /// Gröbner basis of `D·G_k` for the order eliminating components `< k`.
    pub basis: ModuleGroebnerBasis,
    /// Component-`k` parts of the basis elements supported only there.
    pub generators: Vec<WeylElement>,
}

impl Annihilator {
    /// Whether `p v^k` lies in `D·G_k`.
    pub fn annihilates(&self, p: &WeylElement) -> Result<bool, IntegrateError> {
        let k = self.basis.rank() - 1;
        let e = FreeModuleElement::unit(p.clone(), k, k + 1);
        Ok(self.basis.normal_form(&e)?.is_zero())
    }
}

pub fn annihilator_of_vk(
    ctx: &WeylContext,
    gk: &[FreeModuleElement],
    k: usize,
    limits: Limits,
) -> Result<Annihilator, IntegrateError> {
    if ctx.has_aux() || ctx.has_hom() || gk.iter().any(|g| g.context() != ctx) {
        return Err(IntegrateError::NotPlain);
    }
    let order = ModuleOrder::eliminating_leading(k + 1, TermOrder::Grevlex);
    let basis = buchberger_module(ctx, gk, &order, limits)?;
    let generators = basis
        .supported_only_in(k)
        .into_iter()
        .map(|e| e.component(k).primitive())
        .collect();
    Ok(Annihilator { basis, generators })
}
