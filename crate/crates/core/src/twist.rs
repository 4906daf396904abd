//! The twist `∂_i ↦ ∂_i - v^2 f_i ∂_v`, the localizing ideal in `D_v` and
//! normal forms modulo the right ideal `∂_v D_v`.

use std::collections::HashMap;

use num_rational::BigRational;
use thiserror::Error;

use crate::groebner::FreeModuleElement;
use crate::weyl::{anti_normal_order_v, Monomial, WeylContext, WeylElement, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("operator already involves the auxiliary pair")]
    AuxInInput,
    #[error("f must be a polynomial in the coordinates (no derivatives)")]
    NotPolynomial,
    #[error("localization at zero is the zero module; refusing")]
    ZeroF,
    #[error("no generators given for the ideal")]
    NoGenerators,
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// `D_v · {1 - f v, φ(P_1), ..., φ(P_r)}` together with its inputs.
#[derive(Clone, Debug)]
pub struct LocalizingIdeal {
    f: WeylElement,
    generators: Vec<WeylElement>,
    source: Vec<WeylElement>,
}

impl LocalizingIdeal {
    /// The localizing polynomial, in the plain context.
    pub fn f(&self) -> &WeylElement {
        &self.f
    }

    /// `1 - f v` followed by the twisted input generators, in the auxiliary
    /// context.
    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    /// The original generators of `J`.
    pub fn source(&self) -> &[WeylElement] {
        &self.source
    }

    pub fn aux_context(&self) -> &WeylContext {
        self.generators[0].context()
    }

    pub fn plain_context(&self) -> &WeylContext {
        self.f.context()
    }
}

fn to_plain(p: &WeylElement) -> Result<WeylElement, TwistError> {
    let ctx = p.context();
    if ctx.has_hom() {
        return Err(WeylError::ContextMismatch.into());
    }
    if let (Some(v), Some(dv)) = (ctx.v(), ctx.dv()) {
        if p.involves(v) || p.involves(dv) {
            return Err(TwistError::AuxInInput);
        }
    }
    Ok(p.to_context(&ctx.plain())?)
}

/// The twisted derivatives `∂_i - v^2 f_i ∂_v` in the auxiliary context.
fn twisted_partials(f: &WeylElement) -> Result<Vec<WeylElement>, TwistError> {
    let plain = f.context();
    let aux = plain.with_aux();
    let v = WeylElement::generator(&aux, aux.v().expect("aux"));
    let dv = WeylElement::generator(&aux, aux.dv().expect("aux"));
    let v2 = v.pow(2);
    (0..plain.n())
        .map(|i| {
            let di = WeylElement::generator(plain, plain.d(i));
            // [∂_i, f] = ∂f/∂x_i for a polynomial f
            let fi = di.commutator(f)?.to_context(&aux)?;
            let dia = WeylElement::generator(&aux, aux.d(i));
            Ok(&dia - &(&(&v2 * &fi) * &dv))
        })
        .collect()
}

fn apply_twist(p: &WeylElement, partials: &[WeylElement], aux: &WeylContext) -> WeylElement {
    let plain = p.context();
    let n = plain.n();
    let mut powers: HashMap<(usize, u32), WeylElement> = HashMap::new();
    let mut out = WeylElement::zero(aux);
    for (m, c) in p.terms() {
        let mut xpart = Monomial::one(aux.num_gens());
        for i in 0..n {
            xpart.set(aux.x(i), m.get(plain.x(i)));
        }
        let mut acc = WeylElement::term(aux, xpart, c.clone());
        for (i, partial) in partials.iter().enumerate() {
            let e = m.get(plain.d(i));
            if e == 0 {
                continue;
            }
            let pw = powers.entry((i, e)).or_insert_with(|| partial.pow(e));
            acc = &acc * pw;
        }
        out = &out + &acc;
    }
    out
}

/// `φ(P)`: substitutes `∂_i - v^2 (∂f/∂x_i) ∂_v` for each `∂_i` in the
/// normal-ordered form of `P`. The result lives in the auxiliary context.
pub fn phi(p: &WeylElement, f: &WeylElement) -> Result<WeylElement, TwistError> {
    let p = to_plain(p)?;
    let f = to_plain(f)?;
    if p.context() != f.context() {
        return Err(WeylError::ContextMismatch.into());
    }
    if !f.is_polynomial() {
        return Err(TwistError::NotPolynomial);
    }
    let aux = p.context().with_aux();
    let partials = twisted_partials(&f)?;
    Ok(apply_twist(&p, &partials, &aux))
}

/// `{1 - f v} ∪ {φ(P_i)}`.
pub fn build_localizing_ideal(
    f: &WeylElement,
    gens: &[WeylElement],
) -> Result<LocalizingIdeal, TwistError> {
    let f = to_plain(f)?;
    if f.is_zero() {
        return Err(TwistError::ZeroF);
    }
    if !f.is_polynomial() {
        return Err(TwistError::NotPolynomial);
    }
    if gens.is_empty() {
        return Err(TwistError::NoGenerators);
    }
    let source: Vec<WeylElement> = gens.iter().map(to_plain).collect::<Result<_, _>>()?;
    if source.iter().any(|g| g.context() != f.context()) {
        return Err(WeylError::ContextMismatch.into());
    }
    let aux = f.context().with_aux();
    let partials = twisted_partials(&f)?;
    let v = WeylElement::generator(&aux, aux.v().expect("aux"));
    let first = &WeylElement::one(&aux) - &(&f.to_context(&aux)? * &v);
    let mut generators = vec![first];
    for g in &source {
        generators.push(apply_twist(g, &partials, &aux));
    }
    Ok(LocalizingIdeal {
        f,
        generators,
        source,
    })
}

/// Normal form of `g` modulo the right ideal `∂_v D_v`: writes `∂_v` leftmost,
/// drops those terms and returns the coefficient of `v^b` (an operator in the
/// plain algebra) as component `b`.
pub fn normal_form_mod_right_dv(g: &WeylElement) -> Result<FreeModuleElement, TwistError> {
    let aux = g.context();
    if aux.has_hom() {
        return Err(WeylError::ContextMismatch.into());
    }
    let plain = aux.plain();
    let words = anti_normal_order_v(g)?;
    let top = words.iter().filter(|w| w.dv == 0).map(|w| w.v).max();
    let rank = top.map_or(1, |t| t as usize + 1);
    let mut comps: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); rank];
    for w in words.into_iter().filter(|w| w.dv == 0) {
        let mut m = Monomial::one(plain.num_gens());
        for i in 0..plain.n() {
            m.set(plain.x(i), w.rest.get(aux.x(i)));
            m.set(plain.d(i), w.rest.get(aux.d(i)));
        }
        comps[w.v as usize].push((m, w.coeff));
    }
    let components = comps
        .into_iter()
        .map(|ts| WeylElement::from_terms(&plain, ts))
        .collect();
    Ok(FreeModuleElement::new(&plain, components)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_operator;

    fn xy() -> WeylContext {
        WeylContext::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn phi_of_partial() {
        let ctx = xy();
        let f = parse_operator("x^2-y^3", &ctx).unwrap();
        let p = parse_operator("Dx", &ctx).unwrap();
        let aux = ctx.with_aux();
        let expected = parse_operator("Dx - v^2*2*x*Dv", &aux).unwrap();
        assert_eq!(phi(&p, &f).unwrap(), expected);
    }

    #[test]
    fn phi_cusp_generator() {
        let ctx = xy();
        let f = parse_operator("x^2-y^3", &ctx).unwrap();
        let p = parse_operator("(x^2-y^3)*Dx + 2*x", &ctx).unwrap();
        let aux = ctx.with_aux();
        let expected = parse_operator("(x^2-y^3)*(Dx - v^2*2*x*Dv) + 2*x", &aux).unwrap();
        assert_eq!(phi(&p, &f).unwrap(), expected);
    }

    #[test]
    fn phi_fixes_polynomials() {
        let ctx = xy();
        let f = parse_operator("x^2-y^3", &ctx).unwrap();
        let aux = ctx.with_aux();
        for s in ["x", "y^2-3", "7/2"] {
            let p = parse_operator(s, &ctx).unwrap();
            assert_eq!(phi(&p, &f).unwrap(), p.to_context(&aux).unwrap());
        }
    }

    #[test]
    fn phi_rejects_aux() {
        let aux = xy().with_aux();
        let p = parse_operator("v*Dx", &aux).unwrap();
        let f = parse_operator("x", &aux).unwrap();
        assert_eq!(phi(&p, &f), Err(TwistError::AuxInInput));
    }

    #[test]
    fn localizing_ideal_examples() {
        let ctx = WeylContext::new(&["x"]).unwrap();
        let aux = ctx.with_aux();
        let f = parse_operator("x", &ctx).unwrap();
        let j = parse_operator("x*Dx+5", &ctx).unwrap();
        let li = build_localizing_ideal(&f, &[j]).unwrap();
        let expected: Vec<WeylElement> = ["1-x*v", "x*Dx-x*v^2*Dv+5"]
            .iter()
            .map(|s| parse_operator(s, &aux).unwrap())
            .collect();
        assert_eq!(li.generators(), expected.as_slice());

        let ctx = xy();
        let aux = ctx.with_aux();
        let f = parse_operator("x^2-y^3", &ctx).unwrap();
        let gens: Vec<WeylElement> = ["(x^2-y^3)*Dx+2*x", "(x^2-y^3)*Dy-3*y^2"]
            .iter()
            .map(|s| parse_operator(s, &ctx).unwrap())
            .collect();
        let li = build_localizing_ideal(&f, &gens).unwrap();
        let quoted: Vec<WeylElement> = [
            "v*(x^2-y^3)-1",
            "(x^2-y^3)*(Dx - v^2*2*x*Dv) + 2*x",
            "(x^2-y^3)*(Dy + v^2*3*y^2*Dv) -3*y^2",
        ]
        .iter()
        .map(|s| parse_operator(s, &aux).unwrap())
        .collect();
        assert_eq!(li.generators()[0], -&quoted[0]);
        assert_eq!(&li.generators()[1..], &quoted[1..]);

        let one = parse_operator("1", &ctx).unwrap();
        let li = build_localizing_ideal(&one, &gens).unwrap();
        assert_eq!(li.generators()[0], parse_operator("1-v", &aux).unwrap());
        for (g, s) in li.generators()[1..].iter().zip(&gens) {
            assert_eq!(*g, s.to_context(&aux).unwrap());
        }

        let zero = parse_operator("0", &ctx).unwrap();
        assert_eq!(
            build_localizing_ideal(&zero, &gens).unwrap_err(),
            TwistError::ZeroF
        );
    }

    #[test]
    fn right_normal_form_examples() {
        let aux = WeylContext::new(&["x"]).unwrap().with_aux();
        let nf = |s: &str| normal_form_mod_right_dv(&parse_operator(s, &aux).unwrap()).unwrap();
        assert_eq!(nf("v^2*Dv^2").to_string(), "[2]");
        assert!(nf("Dv*(x*v^3+Dx*v)").is_zero());
        assert_eq!(nf("1-x*v").to_string(), "[1, -x]");
        assert_eq!(nf("v^3*Dv").to_string(), "[0, 0, -3]");
        assert_eq!(nf("v*Dv").to_string(), "[-1]");
    }
}
