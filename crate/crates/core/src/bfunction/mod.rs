//! The b-function of a left ideal of `D_v` along `v = 0`: the monic
//! generator of `in_w(I) ∩ K[θ]` with `θ = v ∂_v`, reported in `s = -θ - 1`.

mod upoly;

pub use upoly::{BPolynomial, ThetaPolynomial, UPoly};

use num_rational::BigRational;
use thiserror::Error;

use crate::groebner::{
    buchberger_left_in, gb_adapted_to_weight, initial_ideal_gens, GroebnerBasis, GroebnerError,
    Limits,
};
use crate::order::{is_w_homogeneous, w_degree, OrderError, TermOrder, WeightVector};
use crate::twist::LocalizingIdeal;
use crate::weyl::{WeylContext, WeylElement, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BFunctionError {
    #[error("the b-function is zero: the ideal is not specializable along v = 0")]
    Zero,
    #[error("element involves generators other than v and Dv")]
    NotInSubalgebra,
    #[error("element is not homogeneous for the integration weight")]
    NotHomogeneous,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// Intermediate data of a b-function computation.
#[derive(Clone, Debug)]
pub struct BFunctionReport {
    /// Gröbner basis of the ideal adapted to the integration weight.
    pub adapted: GroebnerBasis,
    /// Initial forms of `adapted`; they generate `in_w(I)`.
    pub initial: Vec<WeylElement>,
    /// Gröbner basis of `in_w(I)` for an order eliminating the coordinates.
    pub elimination: GroebnerBasis,
    /// Elements of `elimination` free of the coordinates.
    pub survivors: Vec<WeylElement>,
    /// Monic generator of `in_w(I) ∩ K[θ]`.
    pub theta: ThetaPolynomial,
    pub b: BPolynomial,
}

impl BFunctionReport {
    /// Whether the operator `p(v ∂_v)` lies in `in_w(I)`.
    pub fn contains_theta(&self, p: &ThetaPolynomial) -> Result<bool, BFunctionError> {
        let op = theta_to_operator(self.elimination.context(), p)?;
        Ok(self.elimination.contains(&op)?)
    }
}

/// `p(θ)` written out in `v` and `∂_v`.
pub fn theta_to_operator(
    ctx: &WeylContext,
    p: &ThetaPolynomial,
) -> Result<WeylElement, BFunctionError> {
    let (v, dv) = ctx.v().zip(ctx.dv()).ok_or(WeylError::MissingAux)?;
    let theta = &WeylElement::generator(ctx, v) * &WeylElement::generator(ctx, dv);
    let mut out = WeylElement::zero(ctx);
    for c in p.coeffs().iter().rev() {
        out = &(&out * &theta) + &WeylElement::constant(ctx, c.clone());
    }
    Ok(out)
}

/// `∏_{j<a} (θ - j)`, the value of `v^a ∂_v^a`.
fn falling(a: u32) -> ThetaPolynomial {
    (0..a).fold(UPoly::one(), |acc, j| {
        acc.mul(&UPoly::linear(BigRational::from_integer(j.into())))
    })
}

/// Maps a `w`-homogeneous `g ∈ K⟨v, ∂_v⟩` of weight `d` into `K[θ]` by
/// multiplying with `∂_v^d` (or `v^{-d}` when `d < 0`) on the left.
pub fn theta_projection(g: &WeylElement) -> Result<ThetaPolynomial, BFunctionError> {
    let ctx = g.context();
    let (v, dv) = ctx.v().zip(ctx.dv()).ok_or(WeylError::MissingAux)?;
    if (0..ctx.num_gens()).any(|i| i != v && i != dv && g.involves(i)) {
        return Err(BFunctionError::NotInSubalgebra);
    }
    let w = WeightVector::integration(ctx)?;
    if !is_w_homogeneous(&w, g) {
        return Err(BFunctionError::NotHomogeneous);
    }
    let Some((m, _)) = g.terms().next() else {
        return Ok(UPoly::zero());
    };
    let d = w_degree(&w, m);
    let shift = if d >= 0 {
        WeylElement::generator(ctx, dv).pow(d as u32)
    } else {
        WeylElement::generator(ctx, v).pow((-d) as u32)
    };
    let h = &shift * g;
    let mut out = UPoly::zero();
    for (m, c) in h.terms() {
        debug_assert_eq!(m.get(v), m.get(dv));
        out = out.add(&falling(m.get(v)).scale(c));
    }
    Ok(out)
}

/// b-function of the left ideal generated by `gens` (in a context with the
/// auxiliary pair) with respect to the integration weight.
pub fn b_function_of_ideal(
    gens: &[WeylElement],
    tie: &TermOrder,
    limits: Limits,
) -> Result<BFunctionReport, BFunctionError> {
    let ctx = gens
        .first()
        .ok_or(GroebnerError::NoGenerators)?
        .context()
        .clone();
    let w = WeightVector::integration(&ctx)?;
    let adapted = gb_adapted_to_weight(gens, &w, tie, limits)?;
    let initial = initial_ideal_gens(&adapted, &w);
    let coords: Vec<usize> = (0..ctx.n()).collect();
    let order = if coords.is_empty() {
        TermOrder::Grevlex
    } else {
        TermOrder::eliminating_spatial(&ctx, &coords)
    };
    let elimination = buchberger_left_in(&ctx, &initial, &order, limits)?;
    let survivors: Vec<WeylElement> = elimination
        .elements()
        .iter()
        .filter(|g| (0..ctx.n()).all(|i| !g.involves(ctx.x(i)) && !g.involves(ctx.d(i))))
        .cloned()
        .collect();
    let mut theta = UPoly::zero();
    for g in &survivors {
        theta = theta.gcd(&theta_projection(g)?);
    }
    let b = BPolynomial::from_theta(&theta).ok_or(BFunctionError::Zero)?;
    Ok(BFunctionReport {
        adapted,
        initial,
        elimination,
        survivors,
        theta,
        b,
    })
}

/// b-function of the localizing ideal `D_v · {1 - f v, φ(J)}`.
pub fn integration_b_function(
    ideal: &LocalizingIdeal,
    tie: &TermOrder,
    limits: Limits,
) -> Result<BFunctionReport, BFunctionError> {
    b_function_of_ideal(ideal.generators(), tie, limits)
}

#[cfg(test)]
mod tests;
