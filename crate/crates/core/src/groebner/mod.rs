//! Left Gröbner bases in the Weyl algebra: ideals, free submodules,
//! weight-adapted bases via homogenization, initial ideals and elimination.

pub(crate) mod engine;
mod module;

pub use module::FreeModuleElement;

use num_rational::BigRational;
use thiserror::Error;

use crate::order::{initial_form_w, OrderError, TermOrder, WeightVector};
use crate::weyl::{Monomial, WeylContext, WeylElement, WeylError};
use engine::{Engine, Poly};

/// Caps on a Buchberger run. Exceeding one aborts with
/// [`GroebnerError::ResourceLimit`]; no partial basis is returned.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    /// Maximal number of S-pairs processed.
    pub max_steps: Option<usize>,
    /// Maximal total degree of a leading monomial.
    pub max_degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("basis too large: {0}")]
    ResourceLimit(String),
    #[error("term order `{0}` is not well-founded; compute a weight-adapted basis instead")]
    NotWellFounded(String),
    #[error("generators to keep must contain both members of each conjugate pair and no `h`")]
    BadSubalgebra,
    #[error("module element has rank {got}, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("module order must list every component exactly once")]
    BadModuleOrder,
    #[error("no generators given")]
    NoGenerators,
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

fn check_contexts<'a>(
    ctx: &WeylContext,
    elems: impl IntoIterator<Item = &'a WeylElement>,
) -> Result<(), GroebnerError> {
    for e in elems {
        if e.context() != ctx {
            return Err(WeylError::ContextMismatch.into());
        }
    }
    Ok(())
}

fn to_poly(engine: &Engine<'_>, p: &WeylElement) -> (Poly, num_bigint::BigInt) {
    engine.integral_poly(p.terms().map(|(m, c)| (m.clone(), 0, c.clone())))
}

fn from_poly(ctx: &WeylContext, p: &Poly) -> WeylElement {
    WeylElement::from_terms(
        ctx,
        p.terms
            .iter()
            .map(|t| (t.mono.clone(), BigRational::from_integer(t.coef.clone()))),
    )
}

/// A reduced left Gröbner basis of an ideal.
///
/// Elements are primitive integer multiples with positive leading
/// coefficient, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx: WeylContext,
    order: TermOrder,
    elements: Vec<WeylElement>,
}

impl GroebnerBasis {
    pub fn context(&self) -> &WeylContext {
        &self.ctx
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn into_elements(self) -> Vec<WeylElement> {
        self.elements
    }

    /// Leading monomials under the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| crate::order::leading_term(&self.order, g).map(|(m, _)| m.clone()))
            .collect()
    }

    /// Whether the ideal is the whole algebra.
    pub fn is_unit(&self) -> bool {
        self.elements
            .iter()
            .any(|g| !g.is_zero() && g.is_constant())
    }

    /// Remainder of `p` modulo the basis; zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &WeylElement) -> Result<WeylElement, GroebnerError> {
        left_normal_form(p, &self.elements, &self.order)
    }

    pub fn contains(&self, p: &WeylElement) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

/// Left division of `p` by `gens`: returns `r` with `p - r` in the left
/// ideal of `gens` and no term of `r` divisible by a leading monomial.
pub fn left_normal_form(
    p: &WeylElement,
    gens: &[WeylElement],
    order: &TermOrder,
) -> Result<WeylElement, GroebnerError> {
    let ctx = p.context();
    check_contexts(ctx, gens)?;
    if !order.is_well_founded() {
        return Err(GroebnerError::NotWellFounded(order.name()));
    }
    let engine = Engine::new(ctx, order, vec![0], Limits::default());
    let basis: Vec<Poly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_poly(&engine, g).0)
        .collect();
    let (pp, den) = to_poly(&engine, p);
    let (r, scale) = engine.reduce(pp, &basis, true);
    let factor = (scale * BigRational::from_integer(den)).recip();
    Ok(from_poly(ctx, &r).scale(&factor))
}

/// Reduced left Gröbner basis of the ideal generated by `gens`.
pub fn buchberger_left(
    gens: &[WeylElement],
    order: &TermOrder,
    limits: Limits,
) -> Result<GroebnerBasis, GroebnerError> {
    let ctx = match gens.first() {
        Some(g) => g.context().clone(),
        None => return Err(GroebnerError::NoGenerators),
    };
    buchberger_left_in(&ctx, gens, order, limits)
}

/// As [`buchberger_left`] with an explicit context, so that an empty
/// generator list is allowed.
pub fn buchberger_left_in(
    ctx: &WeylContext,
    gens: &[WeylElement],
    order: &TermOrder,
    limits: Limits,
) -> Result<GroebnerBasis, GroebnerError> {
    check_contexts(ctx, gens)?;
    if !order.is_well_founded() {
        return Err(GroebnerError::NotWellFounded(order.name()));
    }
    let engine = Engine::new(ctx, order, vec![0], limits);
    let polys = gens.iter().map(|g| to_poly(&engine, g).0).collect();
    let basis = engine.groebner(polys)?;
    Ok(GroebnerBasis {
        ctx: ctx.clone(),
        order: order.clone(),
        elements: basis.iter().map(|p| from_poly(ctx, p)).collect(),
    })
}

/// Gröbner basis adapted to a weight vector whose pair sums may vanish.
///
/// Works in the homogenized algebra with the order "total degree, then
/// `w`-degree, then `tie`" and dehomogenizes. The initial forms of the
/// returned elements generate the initial ideal `in_w` of the ideal. When
/// `w` refined by `tie` is itself a term order the result is additionally
/// inter-reduced in the plain algebra.
pub fn gb_adapted_to_weight(
    gens: &[WeylElement],
    w: &WeightVector,
    tie: &TermOrder,
    limits: Limits,
) -> Result<GroebnerBasis, GroebnerError> {
    let Some(ctx) = gens.first().map(|g| g.context().clone()) else {
        return Err(GroebnerError::NoGenerators);
    };
    check_contexts(&ctx, gens)?;
    let hctx = ctx.homogenized();
    let wh = w.homogenized(&hctx);
    let horder = TermOrder::Graded(Box::new(TermOrder::weighted(wh, tie.clone())));
    let hgens: Vec<WeylElement> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(WeylElement::homogenize)
        .collect::<Result<_, _>>()?;
    let hbasis = buchberger_left_in(&hctx, &hgens, &horder, limits)?;
    let mut elements: Vec<WeylElement> = Vec::new();
    for g in hbasis.elements() {
        let d = g.dehomogenize()?.primitive();
        if !d.is_zero() && !elements.contains(&d) {
            elements.push(d);
        }
    }
    let order = TermOrder::weighted(w.clone(), tie.clone());
    if order.is_well_founded() {
        let engine = Engine::new(&ctx, &order, vec![0], limits);
        let polys = elements.iter().map(|g| to_poly(&engine, g).0).collect();
        elements = engine
            .interreduce(polys)
            .iter()
            .map(|p| from_poly(&ctx, p))
            .collect();
    }
    Ok(GroebnerBasis {
        ctx,
        order,
        elements,
    })
}

/// `{in_w(g) : g ∈ G}`; for a `w`-adapted basis these generate `in_w(I)`.
pub fn initial_ideal_gens(gb: &GroebnerBasis, w: &WeightVector) -> Vec<WeylElement> {
    gb.elements()
        .iter()
        .filter_map(|g| initial_form_w(w, g).ok())
        .collect()
}

/// Generators of the intersection of the left ideal with the subalgebra
/// generated by `keep` (generator indices, closed under conjugate pairs).
pub fn eliminate_to_subalgebra(
    gens: &[WeylElement],
    keep: &[usize],
    limits: Limits,
) -> Result<Vec<WeylElement>, GroebnerError> {
    let Some(ctx) = gens.first().map(|g| g.context().clone()) else {
        return Ok(Vec::new());
    };
    if ctx.has_hom() {
        return Err(GroebnerError::BadSubalgebra);
    }
    for &(x, d) in ctx.pairs() {
        if keep.contains(&x) != keep.contains(&d) {
            return Err(GroebnerError::BadSubalgebra);
        }
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let eliminated: Vec<usize> = (0..ctx.num_gens()).filter(|i| !kept.contains(i)).collect();
    let order = if eliminated.is_empty() || kept.is_empty() {
        TermOrder::Grevlex
    } else {
        TermOrder::Block(vec![eliminated.clone(), kept])
    };
    let gb = buchberger_left_in(&ctx, gens, &order, limits)?;
    Ok(gb
        .into_elements()
        .into_iter()
        .filter(|g| eliminated.iter().all(|&i| !g.involves(i)))
        .collect())
}

/// Whether two generator sets span the same left ideal, decided by mutual
/// reduction against each other's Gröbner bases.
pub fn same_left_ideal(
    a: &[WeylElement],
    b: &[WeylElement],
    order: &TermOrder,
    limits: Limits,
) -> Result<bool, GroebnerError> {
    let ctx = match a.first().or(b.first()) {
        Some(g) => g.context().clone(),
        None => return Ok(true),
    };
    let ga = buchberger_left_in(&ctx, a, order, limits)?;
    let gb = buchberger_left_in(&ctx, b, order, limits)?;
    for p in b {
        if !ga.contains(p)? {
            return Ok(false);
        }
    }
    for p in a {
        if !gb.contains(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Position-over-term order on `D^r`: components are compared first, in
/// the listed priority (first entry most significant), then monomials by
/// `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub base: TermOrder,
    pub priority: Vec<usize>,
}

impl ModuleOrder {
    /// Component 0 most significant, component `rank - 1` least: an order
    /// eliminating all components but the last.
    pub fn eliminating_leading(rank: usize, base: TermOrder) -> Self {
        ModuleOrder {
            base,
            priority: (0..rank).collect(),
        }
    }

    fn ranks(&self) -> Result<Vec<i64>, GroebnerError> {
        let r = self.priority.len();
        let mut ranks = vec![None; r];
        for (pos, &c) in self.priority.iter().enumerate() {
            if c >= r || ranks[c].is_some() {
                return Err(GroebnerError::BadModuleOrder);
            }
            ranks[c] = Some((r - pos) as i64);
        }
        Ok(ranks.into_iter().map(|x| x.expect("permutation")).collect())
    }
}

/// Reduced Gröbner basis of a left submodule of `D^r`.
#[derive(Clone, Debug)]
pub struct ModuleGroebnerBasis {
    ctx: WeylContext,
    order: ModuleOrder,
    elements: Vec<FreeModuleElement>,
}

impl ModuleGroebnerBasis {
    pub fn elements(&self) -> &[FreeModuleElement] {
        &self.elements
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.order.priority.len()
    }

    /// Elements whose only nonzero component is `comp`.
    pub fn supported_only_in(&self, comp: usize) -> Vec<&FreeModuleElement> {
        self.elements
            .iter()
            .filter(|e| e.support() == [comp])
            .collect()
    }

    /// Remainder of `p` modulo the basis; zero iff `p` is in the submodule.
    pub fn normal_form(&self, p: &FreeModuleElement) -> Result<FreeModuleElement, GroebnerError> {
        if p.rank() != self.rank() {
            return Err(GroebnerError::RankMismatch {
                expected: self.rank(),
                got: p.rank(),
            });
        }
        let engine = Engine::new(
            &self.ctx,
            &self.order.base,
            self.order.ranks()?,
            Limits::default(),
        );
        let basis: Vec<Poly> = self
            .elements
            .iter()
            .map(|g| module_to_poly(&engine, g).0)
            .collect();
        let (pp, den) = module_to_poly(&engine, p);
        let (r, scale) = engine.reduce(pp, &basis, true);
        let factor = (scale * BigRational::from_integer(den)).recip();
        Ok(module_from_poly(&self.ctx, self.rank(), &r).scale(&factor))
    }
}

fn module_to_poly(engine: &Engine<'_>, p: &FreeModuleElement) -> (Poly, num_bigint::BigInt) {
    engine.integral_poly(
        p.components()
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.terms().map(move |(m, a)| (m.clone(), i, a.clone()))),
    )
}

fn module_from_poly(ctx: &WeylContext, rank: usize, p: &Poly) -> FreeModuleElement {
    let mut comps: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); rank];
    for t in &p.terms {
        comps[t.comp].push((t.mono.clone(), BigRational::from_integer(t.coef.clone())));
    }
    let components = comps
        .into_iter()
        .map(|ts| WeylElement::from_terms(ctx, ts))
        .collect();
    FreeModuleElement::new(ctx, components).expect("shared context")
}

/// Reduced Gröbner basis of the left submodule generated by `gens`.
pub fn buchberger_module(
    ctx: &WeylContext,
    gens: &[FreeModuleElement],
    order: &ModuleOrder,
    limits: Limits,
) -> Result<ModuleGroebnerBasis, GroebnerError> {
    let rank = order.priority.len();
    for g in gens {
        if g.context() != ctx {
            return Err(WeylError::ContextMismatch.into());
        }
        if g.rank() != rank {
            return Err(GroebnerError::RankMismatch {
                expected: rank,
                got: g.rank(),
            });
        }
    }
    if !order.base.is_well_founded() {
        return Err(GroebnerError::NotWellFounded(order.base.name()));
    }
    let engine = Engine::new(ctx, &order.base, order.ranks()?, limits);
    let polys = gens.iter().map(|g| module_to_poly(&engine, g).0).collect();
    let basis = engine.groebner(polys)?;
    Ok(ModuleGroebnerBasis {
        ctx: ctx.clone(),
        order: order.clone(),
        elements: basis
            .iter()
            .map(|p| module_from_poly(ctx, rank, p))
            .collect(),
    })
}
