use std::fmt;

use num_rational::BigRational;

use crate::weyl::{WeylContext, WeylElement, WeylError};

/// Element of the free left module `D^r`; component `i` stands for the
/// basis symbol `e_i` (the power `v^i` in the integration step).
#[derive(Clone, PartialEq, Eq)]
pub struct FreeModuleElement {
    ctx: WeylContext,
    components: Vec<WeylElement>,
}

impl FreeModuleElement {
    pub fn new(ctx: &WeylContext, components: Vec<WeylElement>) -> Result<Self, WeylError> {
        if components.iter().any(|c| c.context() != ctx) {
            return Err(WeylError::ContextMismatch);
        }
        Ok(FreeModuleElement {
            ctx: ctx.clone(),
            components,
        })
    }

    pub fn zero(ctx: &WeylContext, rank: usize) -> Self {
        FreeModuleElement {
            ctx: ctx.clone(),
            components: vec![WeylElement::zero(ctx); rank],
        }
    }

    /// `p * e_i` in a module of the given rank.
    pub fn unit(p: WeylElement, i: usize, rank: usize) -> Self {
        let ctx = p.context().clone();
        let mut out = Self::zero(&ctx, rank);
        out.components[i] = p;
        out
    }

    pub fn context(&self) -> &WeylContext {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[WeylElement] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &WeylElement {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(WeylElement::is_zero)
    }

    /// Indices of the nonzero components.
    pub fn support(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| !self.components[i].is_zero())
            .collect()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, WeylError> {
        if self.ctx != other.ctx || self.rank() != other.rank() {
            return Err(WeylError::ContextMismatch);
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FreeModuleElement {
            ctx: self.ctx.clone(),
            components,
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FreeModuleElement {
            ctx: self.ctx.clone(),
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Left multiplication `a * self`.
    pub fn left_mul(&self, a: &WeylElement) -> Result<Self, WeylError> {
        let components = self
            .components
            .iter()
            .map(|p| a.checked_mul(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FreeModuleElement {
            ctx: self.ctx.clone(),
            components,
        })
    }
}

impl fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeModuleElement{self}")
    }
}
