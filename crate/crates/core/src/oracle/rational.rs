use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::Polynomial;

/// `numerator / ∏ factor^exponent` over `Q`. Denominator factors are kept
/// as given and never cancelled against the numerator.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Vec<(Polynomial, u32)>,
}

impl RationalFunction {
    pub fn zero(names: Arc<[String]>) -> Self {
        RationalFunction::from_polynomial(Polynomial::zero(names))
    }

    pub fn one(names: Arc<[String]>) -> Self {
        RationalFunction::from_polynomial(Polynomial::one(names))
    }

    pub fn from_polynomial(num: Polynomial) -> Self {
        RationalFunction {
            num,
            den: Vec::new(),
        }
    }

    /// `1 / q`; `None` if `q` is zero.
    pub fn reciprocal_of(q: &Polynomial) -> Option<Self> {
        if q.is_zero() {
            return None;
        }
        let one = Polynomial::one(q.names().clone());
        Some(
            RationalFunction {
                num: one,
                den: vec![(q.clone(), 1)],
            }
            .normalized(),
        )
    }

    pub fn names(&self) -> &Arc<[String]> {
        self.num.names()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(Polynomial, u32)] {
        &self.den
    }

    pub fn denominator(&self) -> Polynomial {
        self.den
            .iter()
            .fold(Polynomial::one(self.names().clone()), |acc, (q, e)| {
                &acc * &q.pow(*e)
            })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Folds constant factors into the numerator and merges repeated ones.
    fn normalized(mut self) -> Self {
        let mut den: Vec<(Polynomial, u32)> = Vec::new();
        for (q, e) in std::mem::take(&mut self.den) {
            if e == 0 {
                continue;
            }
            if let Some(c) = q.as_constant() {
                self.num = self.num.scale(&c.recip().pow(e as i32));
                continue;
            }
            match den.iter_mut().find(|(p, _)| *p == q) {
                Some(slot) => slot.1 += e,
                None => den.push((q, e)),
            }
        }
        if self.num.is_zero() {
            den.clear();
        }
        self.den = den;
        self
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        RationalFunction {
            num: &self.num * &other.num,
            den,
        }
        .normalized()
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        RationalFunction {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // common denominator: factorwise maximum of the exponents
        let mut den = self.den.clone();
        for (q, e) in &other.den {
            match den.iter_mut().find(|(p, _)| p == q) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => den.push((q.clone(), *e)),
            }
        }
        let lift = |r: &Self| {
            den.iter().fold(r.num.clone(), |acc, (q, e)| {
                let have = r.den.iter().find(|(p, _)| p == q).map_or(0, |(_, k)| *k);
                &acc * &q.pow(e - have)
            })
        };
        let num = &lift(self) + &lift(other);
        RationalFunction { num, den }.normalized()
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `None` if `self` is zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(
            RationalFunction {
                num: self.denominator(),
                den: vec![(self.num.clone(), 1)],
            }
            .normalized(),
        )
    }

    /// Integer powers; `None` for a negative power of zero.
    pub fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        let k32 = u32::try_from(k).ok()?;
        Some(
            RationalFunction {
                num: base.num.pow(k32),
                den: base.den.iter().map(|(q, d)| (q.clone(), d * k32)).collect(),
            }
            .normalized(),
        )
    }

    /// Exact partial derivative by the quotient rule.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = RationalFunction {
            num: self.num.derivative(idx),
            den: self.den.clone(),
        };
        for (k, (q, e)) in self.den.iter().enumerate() {
            let dq = q.derivative(idx);
            if dq.is_zero() {
                continue;
            }
            let mut den = self.den.clone();
            den[k].1 += 1;
            let c = BigRational::from_integer((-i64::from(*e)).into());
            let term = RationalFunction {
                num: (&self.num * &dq).scale(&c),
                den,
            };
            out = out.add(&term);
        }
        out.normalized()
    }

    /// Cross-multiplied identity test.
    pub fn equals(&self, other: &Self) -> bool {
        (&(&self.num * &other.denominator()) - &(&other.num * &self.denominator())).is_zero()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() || self.is_zero() {
            return write!(f, "{}", self.num);
        }
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(q, e)| {
                if *e == 1 {
                    format!("({q})")
                } else {
                    format!("({q})^{e}")
                }
            })
            .collect();
        write!(f, "({})/({})", self.num, parts.join("*"))
    }
}
