//! Commutative multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::weyl::element::write_terms;
use crate::weyl::Monomial;

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    names: Arc<[String]>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(names: Arc<[String]>) -> Self {
        Polynomial {
            names,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(names: Arc<[String]>, c: BigRational) -> Self {
        let n = names.len();
        Self::from_terms(names, [(Monomial::one(n), c)])
    }

    pub fn one(names: Arc<[String]>) -> Self {
        Self::constant(names, BigRational::one())
    }

    pub fn var(names: Arc<[String]>, idx: usize) -> Self {
        let n = names.len();
        Self::from_terms(names, [(Monomial::generator(n, idx), BigRational::one())])
    }

    pub fn from_terms<I>(names: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut out = Self::zero(names);
        for (m, c) in terms {
            assert_eq!(
                m.len(),
                out.names.len(),
                "monomial length does not match variables"
            );
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(m.clone())
            .or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn names(&self) -> &Arc<[String]> {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(BigRational::zero),
        )
    }

    /// Coefficient of the structurally largest monomial.
    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.names.clone());
        }
        Polynomial {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.names.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.names.clone());
        for (m, c) in &self.terms {
            let e = m.get(idx);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.set(idx, e - 1);
            out.add_term(dm, c * BigRational::from_integer(e.into()));
        }
        out
    }

    fn check(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.names, &other.names) || self.names == other.names,
            "polynomials over different variables"
        );
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.check(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.check(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.check(rhs);
        let mut out = Polynomial::zero(self.names.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev(), |m| {
            let mut parts = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.names[i].clone()),
                    _ => parts.push(format!("{}^{}", self.names[i], e)),
                }
            }
            parts.join("*")
        })
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
