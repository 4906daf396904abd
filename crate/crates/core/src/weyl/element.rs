use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::monomial_product;
use super::{Generator, Monomial, WeylContext, WeylError};

/// A finite sum of `coefficient * monomial` in normal order.
///
/// Every stored coefficient is nonzero, so two elements are equal exactly
/// when their term maps are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    ctx: WeylContext,
    terms: BTreeMap<Monomial, BigRational>,
}

impl WeylElement {
    pub fn zero(ctx: &WeylContext) -> Self {
        WeylElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &WeylContext) -> Self {
        Self::constant(ctx, BigRational::one())
    }

    pub fn constant(ctx: &WeylContext, c: BigRational) -> Self {
        Self::term(ctx, Monomial::one(ctx.num_gens()), c)
    }

    pub fn from_integer(ctx: &WeylContext, c: i64) -> Self {
        Self::constant(ctx, BigRational::from_integer(c.into()))
    }

    /// The single generator with index `idx`.
    pub fn generator(ctx: &WeylContext, idx: usize) -> Self {
        Self::term(
            ctx,
            Monomial::generator(ctx.num_gens(), idx),
            BigRational::one(),
        )
    }

    pub fn term(ctx: &WeylContext, mono: Monomial, c: BigRational) -> Self {
        assert_eq!(
            mono.len(),
            ctx.num_gens(),
            "monomial length does not match context"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        WeylElement {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Sums the given normal-ordered terms, merging repeated monomials.
    pub fn from_terms<I>(ctx: &WeylContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut out = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(
                m.len(),
                ctx.num_gens(),
                "monomial length does not match context"
            );
            out.add_term(m, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn context(&self) -> &WeylContext {
        &self.ctx
    }

    /// Terms in ascending structural (grevlex) order.
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Whether the element is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// True when no term carries a `∂`-type generator.
    pub fn is_polynomial(&self) -> bool {
        self.terms
            .keys()
            .all(|m| (0..self.ctx.num_gens()).all(|i| m.get(i) == 0 || !self.ctx.is_partial(i)))
    }

    /// True when generator `idx` appears in some term.
    pub fn involves(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.get(idx) > 0)
    }

    /// Maximal exponent of generator `idx`.
    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.get(idx)).max().unwrap_or(0)
    }

    /// Maximal total degree of a term; zero for the zero element.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn check_same(&self, other: &Self) -> Result<(), WeylError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(WeylError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    /// Product in the Weyl algebra of the shared context.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                for (m, k) in monomial_product(&self.ctx, ma, mb) {
                    out.add_term(m, &c * BigRational::from_integer(k));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        WeylElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, WeylError> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    /// Re-expresses the element over another context with the same spatial
    /// names, mapping generators by role. Fails if a generator that occurs
    /// is missing from `target`.
    pub fn to_context(&self, target: &WeylContext) -> Result<Self, WeylError> {
        if target.spatial_names() != self.ctx.spatial_names() {
            return Err(WeylError::ContextMismatch);
        }
        let map: Vec<Option<usize>> = (0..self.ctx.num_gens())
            .map(|i| match self.ctx.generator(i) {
                Generator::X(j) => Some(target.x(j)),
                Generator::D(j) => Some(target.d(j)),
                Generator::V => target.v(),
                Generator::Dv => target.dv(),
                Generator::H => target.h(),
            })
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(target.num_gens());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => nm.set(j, e),
                    None => return Err(WeylError::MissingGenerator(self.ctx.name(i))),
                }
            }
            out.add_term(nm, c.clone());
        }
        Ok(out)
    }

    /// Lifts to the homogenized context, padding each term with powers of
    /// `h` up to the maximal total degree.
    pub fn homogenize(&self) -> Result<Self, WeylError> {
        if self.ctx.has_hom() {
            return Err(WeylError::AlreadyHomogenized);
        }
        let hctx = self.ctx.homogenized();
        let h = hctx.h().expect("homogenized context has h");
        let top = self.total_degree();
        let lifted = self.to_context(&hctx)?;
        let terms = lifted.terms.into_iter().map(|(mut m, c)| {
            let d = m.degree();
            m.set(h, top - d);
            (m, c)
        });
        Ok(Self::from_terms(&hctx, terms))
    }

    /// Sets `h = 1`.
    pub fn dehomogenize(&self) -> Result<Self, WeylError> {
        let Some(h) = self.ctx.h() else {
            return Err(WeylError::NotHomogenized);
        };
        let target = self.ctx.dehomogenized();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m = m.clone();
            m.set(h, 0);
            (m, c.clone())
        });
        let flat = Self::from_terms(&self.ctx, terms);
        flat.to_context(&target)
    }

    /// Multiplies all coefficients by the positive rational that makes them
    /// coprime integers with positive leading (structurally largest)
    /// coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let v = (c * BigRational::from_integer(den_lcm.clone())).to_integer();
            content = num_integer::Integer::gcd(&content, &v);
        }
        let lead_negative = self
            .terms
            .values()
            .next_back()
            .is_some_and(|c| c.is_negative());
        let mut factor = BigRational::new(den_lcm, content);
        if lead_negative {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

impl<'a> Add<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &'a WeylElement) -> WeylElement {
        self.checked_add(rhs)
            .expect("Weyl elements from different contexts")
    }
}

impl<'a> Sub<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &'a WeylElement) -> WeylElement {
        self.checked_sub(rhs)
            .expect("Weyl elements from different contexts")
    }
}

impl<'a> Mul<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &'a WeylElement) -> WeylElement {
        self.checked_mul(rhs)
            .expect("Weyl elements from different contexts")
    }
}

impl Add for WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: WeylElement) -> WeylElement {
        &self + &rhs
    }
}

impl Sub for WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: WeylElement) -> WeylElement {
        &self - &rhs
    }
}

impl Mul for WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: WeylElement) -> WeylElement {
        &self * &rhs
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        WeylElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Writes `sum of coefficient*monomial` terms (largest first) in the syntax
/// accepted by the operator parser.
pub(crate) fn write_terms<'a, I>(
    f: &mut impl fmt::Write,
    terms: I,
    render: impl Fn(&Monomial) -> String,
) -> fmt::Result
where
    I: Iterator<Item = (&'a Monomial, &'a BigRational)>,
{
    let mut first = true;
    for (m, c) in terms {
        let body = render(m);
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                f.write_char('-')?;
            }
        } else {
            f.write_str(if neg { "-" } else { "+" })?;
        }
        first = false;
        if body.is_empty() {
            f.write_str(&fmt_rational(&abs))?;
        } else if abs.is_one() {
            f.write_str(&body)?;
        } else {
            write!(f, "{}*{}", fmt_rational(&abs), body)?;
        }
    }
    if first {
        f.write_char('0')?;
    }
    Ok(())
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev(), |m| m.render(&self.ctx))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx1() -> WeylContext {
        WeylContext::new(&["x"]).unwrap().with_aux()
    }

    fn gen(ctx: &WeylContext, name: &str) -> WeylElement {
        WeylElement::generator(ctx, ctx.lookup(name).unwrap())
    }

    #[test]
    fn defining_relation() {
        let ctx = ctx1();
        let (x, dx) = (gen(&ctx, "x"), gen(&ctx, "Dx"));
        let xdx = &x * &dx;
        assert_eq!(&dx * &x, &xdx + &WeylElement::one(&ctx));
        assert_eq!(xdx.to_string(), "x*Dx");
        assert_eq!((&dx * &x).to_string(), "x*Dx+1");
    }

    #[test]
    fn dv2_v2() {
        let ctx = ctx1();
        let (v, dv) = (gen(&ctx, "v"), gen(&ctx, "Dv"));
        let p = &dv.pow(2) * &v.pow(2);
        assert_eq!(p.to_string(), "v^2*Dv^2+4*v*Dv+2");
    }

    #[test]
    fn homogenized_relation() {
        let ctx = WeylContext::new(&["x"]).unwrap().homogenized();
        let (x, dx) = (gen(&ctx, "x"), gen(&ctx, "Dx"));
        assert_eq!((&dx * &x).to_string(), "x*Dx+h^2");
    }

    #[test]
    fn add_and_scale() {
        let ctx = ctx1();
        let (x, dx, v) = (gen(&ctx, "x"), gen(&ctx, "Dx"), gen(&ctx, "v"));
        let xdx = &x * &dx;
        assert!((&xdx + &(-&xdx)).is_zero());
        let two = BigRational::from_integer(2.into());
        let p = &xdx + &WeylElement::one(&ctx);
        assert_eq!(p.scale(&two).to_string(), "2*x*Dx+2");
        let xv = &x * &v;
        let one_minus = &WeylElement::one(&ctx) - &xv;
        assert_eq!(&one_minus + &xv, WeylElement::one(&ctx));
    }

    #[test]
    fn homogenize_round_trip() {
        let ctx = WeylContext::new(&["x"]).unwrap();
        let (x, dx) = (gen(&ctx, "x"), gen(&ctx, "Dx"));
        let p = &(&x * &dx) + &WeylElement::one(&ctx);
        let hp = p.homogenize().unwrap();
        assert_eq!(hp.to_string(), "x*Dx+h^2");
        assert_eq!(hp.dehomogenize().unwrap(), p);
        assert_eq!(dx.homogenize().unwrap().to_string(), "Dx");
    }

    #[test]
    fn context_mismatch() {
        let a = WeylElement::one(&WeylContext::new(&["x"]).unwrap());
        let b = WeylElement::one(&WeylContext::new(&["y"]).unwrap());
        assert_eq!(a.checked_mul(&b), Err(WeylError::ContextMismatch));
    }

    #[test]
    fn primitive_form() {
        let ctx = ctx1();
        let x = gen(&ctx, "x");
        let half = BigRational::new((-1).into(), 2.into());
        let p =
            &x.scale(&half) + &WeylElement::constant(&ctx, BigRational::new(1.into(), 3.into()));
        assert_eq!(p.primitive().to_string(), "3*x-2");
    }
}
