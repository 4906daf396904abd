//! Exact action of operators on rational functions times an exponential,
//! by direct differentiation. Independent of the Gröbner machinery; used
//! to confirm annihilation claims.

mod rational;

pub use rational::RationalFunction;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::parse::{parse_with, ParseError, Semantics};
use crate::poly::Polynomial;
use crate::weyl::{Monomial, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("operator variables {operator:?} differ from function variables {function:?}")]
    VariableMismatch {
        operator: Vec<String>,
        function: Vec<String>,
    },
    #[error("operator involves auxiliary or homogenizing generators")]
    NotPlain,
}

/// `base · e^exponent`.
#[derive(Clone, Debug)]
pub struct TwistedFunction {
    pub base: RationalFunction,
    pub exponent: RationalFunction,
}

impl TwistedFunction {
    pub fn rational(base: RationalFunction) -> Self {
        let exponent = RationalFunction::zero(base.names().clone());
        TwistedFunction { base, exponent }
    }

    pub fn names(&self) -> &Arc<[String]> {
        self.base.names()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    /// `∂(g e^u) = (∂g + g ∂u) e^u`.
    pub fn derivative(&self, idx: usize) -> Self {
        let du = self.exponent.derivative(idx);
        TwistedFunction {
            base: self.base.derivative(idx).add(&self.base.mul(&du)),
            exponent: self.exponent.clone(),
        }
    }

    fn same_exponent(&self, other: &Self) -> bool {
        self.exponent.equals(&other.exponent)
    }

    /// Sum of two functions with the same exponential factor.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        self.same_exponent(other).then(|| TwistedFunction {
            base: self.base.add(&other.base),
            exponent: self.exponent.clone(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        TwistedFunction {
            base: self.base.mul(&other.base),
            exponent: self.exponent.add(&other.exponent),
        }
    }

    pub fn equals(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.same_exponent(other) && self.base.equals(&other.base)
    }
}

impl fmt::Display for TwistedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() || self.is_zero() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}*exp({})", self.base, self.exponent)
        }
    }
}

fn monomial_polynomial(names: &Arc<[String]>, exps: &[u32], c: &BigRational) -> Polynomial {
    Polynomial::from_terms(names.clone(), [(Monomial::from_exponents(exps), c.clone())])
}

/// `P · F`: each term `c x^α ∂^β` differentiates `F` by `∂^β` and then
/// multiplies by `c x^α`.
pub fn apply_operator(
    p: &WeylElement,
    func: &TwistedFunction,
) -> Result<TwistedFunction, OracleError> {
    let ctx = p.context();
    if ctx.has_aux() || ctx.has_hom() {
        return Err(OracleError::NotPlain);
    }
    if ctx.spatial_names() != &func.names()[..] {
        return Err(OracleError::VariableMismatch {
            operator: ctx.spatial_names().to_vec(),
            function: func.names().to_vec(),
        });
    }
    let n = ctx.n();
    let names = func.names().clone();
    let mut derivs: HashMap<Vec<u32>, TwistedFunction> = HashMap::new();
    derivs.insert(vec![0; n], func.clone());
    let mut acc = RationalFunction::zero(names.clone());
    for (m, c) in p.terms() {
        let beta: Vec<u32> = (0..n).map(|i| m.get(ctx.d(i))).collect();
        let alpha: Vec<u32> = (0..n).map(|i| m.get(ctx.x(i))).collect();
        let g = derivative_multi(&mut derivs, &beta);
        acc = acc.add(
            &g.base
                .mul_polynomial(&monomial_polynomial(&names, &alpha, c)),
        );
    }
    Ok(TwistedFunction {
        base: acc,
        exponent: func.exponent.clone(),
    })
}

fn derivative_multi(
    cache: &mut HashMap<Vec<u32>, TwistedFunction>,
    beta: &[u32],
) -> TwistedFunction {
    if let Some(g) = cache.get(beta) {
        return g.clone();
    }
    let i = beta
        .iter()
        .rposition(|&b| b > 0)
        .expect("zero multi-index is cached");
    let mut lower = beta.to_vec();
    lower[i] -= 1;
    let g = derivative_multi(cache, &lower).derivative(i);
    cache.insert(beta.to_vec(), g.clone());
    g
}

/// Whether every operator in `gens` sends `func` to zero.
pub fn is_annihilated(gens: &[WeylElement], func: &TwistedFunction) -> Result<bool, OracleError> {
    for g in gens {
        if !apply_operator(g, func)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

struct FunctionSemantics {
    names: Arc<[String]>,
}

fn semantic(col: usize, msg: &str) -> ParseError {
    ParseError::Semantic {
        col,
        msg: msg.to_string(),
    }
}

impl Semantics for FunctionSemantics {
    type Value = TwistedFunction;

    fn number(&self, n: BigInt) -> TwistedFunction {
        let c = Polynomial::constant(self.names.clone(), BigRational::from_integer(n));
        TwistedFunction::rational(RationalFunction::from_polynomial(c))
    }

    fn ident(&self, name: &str, col: usize) -> Result<TwistedFunction, ParseError> {
        let idx = self.names.iter().position(|s| s == name).ok_or_else(|| {
            ParseError::UnknownIdentifier {
                name: name.to_string(),
                col,
            }
        })?;
        let x = Polynomial::var(self.names.clone(), idx);
        Ok(TwistedFunction::rational(
            RationalFunction::from_polynomial(x),
        ))
    }

    fn call(
        &self,
        name: &str,
        arg: TwistedFunction,
        col: usize,
    ) -> Result<TwistedFunction, ParseError> {
        if name != "exp" {
            return Err(semantic(col, &format!("unknown function `{name}`")));
        }
        if !arg.exponent.is_zero() {
            return Err(semantic(col, "nested exponentials are not supported"));
        }
        Ok(TwistedFunction {
            base: RationalFunction::one(self.names.clone()),
            exponent: arg.base,
        })
    }

    fn add(
        &self,
        a: TwistedFunction,
        b: TwistedFunction,
        col: usize,
    ) -> Result<TwistedFunction, ParseError> {
        a.checked_add(&b)
            .ok_or_else(|| semantic(col, "sum of terms with different exponential factors"))
    }

    fn sub(
        &self,
        a: TwistedFunction,
        b: TwistedFunction,
        col: usize,
    ) -> Result<TwistedFunction, ParseError> {
        self.add(a, self.neg(b), col)
    }

    fn mul(
        &self,
        a: TwistedFunction,
        b: TwistedFunction,
        _: usize,
    ) -> Result<TwistedFunction, ParseError> {
        Ok(a.mul(&b))
    }

    fn div(
        &self,
        a: TwistedFunction,
        b: TwistedFunction,
        col: usize,
    ) -> Result<TwistedFunction, ParseError> {
        let inv = b.base.recip().ok_or(ParseError::DivisionByZero { col })?;
        Ok(TwistedFunction {
            base: a.base.mul(&inv),
            exponent: a.exponent.sub(&b.exponent),
        })
    }

    fn neg(&self, a: TwistedFunction) -> TwistedFunction {
        TwistedFunction {
            base: a.base.neg(),
            exponent: a.exponent,
        }
    }

    fn pow(&self, a: TwistedFunction, e: i64, col: usize) -> Result<TwistedFunction, ParseError> {
        let base = a.base.powi(e).ok_or(ParseError::DivisionByZero { col })?;
        let k = BigRational::from_integer(e.into());
        Ok(TwistedFunction {
            base,
            exponent: a.exponent.scale(&k),
        })
    }
}

/// Parses a function such as `x^-2*exp(1/(x^3-y^2*z^2))` over the given
/// variables. Integer exponents may be negative; `exp` takes a rational
/// function.
pub fn parse_function<S: AsRef<str>>(
    src: &str,
    names: &[S],
) -> Result<TwistedFunction, ParseError> {
    let names: Arc<[String]> = names.iter().map(|s| s.as_ref().to_string()).collect();
    parse_with(src, &FunctionSemantics { names })
}

#[cfg(test)]
mod tests;
