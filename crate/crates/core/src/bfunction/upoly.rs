use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::weyl::element::fmt_rational;

/// Dense univariate polynomial over `Q`, coefficients in ascending degree
/// with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        UPoly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `t - r`.
    pub fn linear(r: BigRational) -> Self {
        UPoly::from_coeffs(vec![-r, BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        UPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => UPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        UPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
        UPoly::from_coeffs((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d
            .leading()
            .expect("division by the zero polynomial")
            .clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone() / &dl;
            let shift = top - dd;
            for (j, b) in d.coeffs.iter().enumerate() {
                r[shift + j] -= &c * b;
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(UPoly::zero(), |acc, c| {
            acc.mul(inner).add(&UPoly::constant(c.clone()))
        })
    }

    /// Renders with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&a));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// A polynomial in `θ = v ∂_v`.
pub type ThetaPolynomial = UPoly;

/// The b-function `b(s)` normalized to coprime integer coefficients with
/// positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BPolynomial {
    coeffs: Vec<BigInt>,
}

/// Beyond this bound the integer root search gives up rather than loop.
const ROOT_SEARCH_LIMIT: u64 = 50_000_000;

impl BPolynomial {
    /// Normalizes a nonzero rational polynomial in `s`.
    pub fn from_upoly(p: &UPoly) -> Option<Self> {
        let lc = p.leading()?;
        let den = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if lc.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in &mut ints {
            *c = &*c / &g * &sign;
        }
        Some(BPolynomial { coeffs: ints })
    }

    /// `b(s) = θ-polynomial evaluated at θ = -s - 1`, normalized.
    pub fn from_theta(theta: &ThetaPolynomial) -> Option<Self> {
        let sub = UPoly::from_integers(&[-1, -1]);
        BPolynomial::from_upoly(&theta.compose(&sub))
    }

    pub fn from_integers(coeffs: &[i64]) -> Option<Self> {
        BPolynomial::from_upoly(&UPoly::from_integers(coeffs))
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_upoly(&self) -> UPoly {
        UPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn eval(&self, s: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * s + c)
    }

    /// Splits off the largest power of `s`: returns `(m, q)` with
    /// `b = s^m q` and `q(0) != 0`.
    fn strip_zero_root(&self) -> (usize, &[BigInt]) {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (m, &self.coeffs[m..])
    }

    /// `1 + max |c_i / c_d|` rounded up: every root has absolute value below it.
    fn cauchy_bound(&self) -> BigInt {
        let lc = self.coeffs.last().expect("nonzero").abs();
        let top = self.coeffs.iter().map(Signed::abs).max().expect("nonzero");
        BigInt::one() + top.div_ceil(&lc)
    }

    /// Nonnegative (or, with `positive == false`, negative) integer roots,
    /// ascending. `None` if the search is too large.
    fn integer_roots_in(&self, positive: bool) -> Option<Vec<BigInt>> {
        let (m, q) = self.strip_zero_root();
        let mut roots = Vec::new();
        if m > 0 && positive {
            roots.push(BigInt::zero());
        }
        if q.len() <= 1 {
            return Some(roots);
        }
        let q0 = q[0].abs();
        let bound = self.cauchy_bound().min(q0.clone());
        let limit = bound.to_u64().filter(|&b| b <= ROOT_SEARCH_LIMIT)?;
        let qpoly = BPolynomial { coeffs: q.to_vec() };
        for r in 1..=limit {
            let r = BigInt::from(r);
            if !(&q0 % &r).is_zero() {
                continue;
            }
            let cand = if positive { r } else { -r };
            if qpoly.eval(&cand).is_zero() {
                roots.push(cand);
            }
        }
        roots.sort();
        Some(roots)
    }

    /// All integer roots, ascending. `None` if the coefficients are so large
    /// that the search was not attempted.
    pub fn integer_roots(&self) -> Option<Vec<BigInt>> {
        let mut out = self.integer_roots_in(false)?;
        out.extend(self.integer_roots_in(true)?);
        out.sort();
        Some(out)
    }

    /// Largest integer root `k >= 0`, if any.
    pub fn largest_nonneg_integer_root(&self) -> Option<Option<BigInt>> {
        Some(self.integer_roots_in(true)?.into_iter().max())
    }

    /// Rational roots found by the rational root test, ascending. `None`
    /// if the candidate set is too large to enumerate.
    pub fn rational_roots(&self) -> Option<Vec<BigRational>> {
        let (m, q) = self.strip_zero_root();
        let mut roots = Vec::new();
        if m > 0 {
            roots.push(BigRational::zero());
        }
        if q.len() > 1 {
            let num = divisors(&q[0])?;
            let den = divisors(q.last().expect("nonempty"))?;
            let qpoly = BPolynomial { coeffs: q.to_vec() }.to_upoly();
            for p in &num {
                for d in &den {
                    for sign in [1, -1] {
                        let r = BigRational::new(BigInt::from(sign) * p, d.clone());
                        if !roots.contains(&r) && qpoly.eval(&r).is_zero() {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

/// Positive divisors by trial division; `None` above the search limit.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.checked_mul(d)? <= n {
        if d > ROOT_SEARCH_LIMIT {
            return None;
        }
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

impl fmt::Display for BPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_upoly().render("s"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic() {
        let a = UPoly::from_integers(&[1, 2, 1]);
        let b = UPoly::from_integers(&[1, 1]);
        let (quo, rem) = a.div_rem(&b);
        assert_eq!(quo, b);
        assert!(rem.is_zero());
        assert_eq!(a.gcd(&UPoly::from_integers(&[-1, 0, 1])), b);
        assert_eq!(a.eval(&q(1, 2)), q(9, 4));
        assert_eq!(a.render("t"), "t^2+2*t+1");
        assert_eq!(
            UPoly::from_integers(&[0, -3, 0, 2]).render("t"),
            "2*t^3-3*t"
        );
        assert_eq!(
            b.compose(&UPoly::from_integers(&[0, 0, 1])),
            UPoly::from_integers(&[1, 0, 1])
        );
        assert_eq!(UPoly::one().gcd(&UPoly::zero()), UPoly::one());
        assert_eq!(UPoly::zero().gcd(&UPoly::zero()), UPoly::zero());
    }

    #[test]
    fn theta_substitution() {
        // (θ+1)(θ+6) ↦ s(s-5)·(+1) after θ = -s-1
        let theta = UPoly::from_integers(&[1, 1]).mul(&UPoly::from_integers(&[6, 1]));
        let b = BPolynomial::from_theta(&theta).unwrap();
        assert_eq!(b.to_string(), "s^2-5*s");
        let half = UPoly::from_coeffs(vec![q(-1, 2), BigRational::one()])
            .mul(&UPoly::from_integers(&[1, 1]));
        assert_eq!(
            BPolynomial::from_theta(&half).unwrap().to_string(),
            "2*s^2+3*s"
        );
    }

    #[test]
    fn roots() {
        let b = BPolynomial::from_integers(&[0, 1716, 2586, 1296, 216]).unwrap();
        assert_eq!(
            b.integer_roots().unwrap(),
            vec![BigInt::from(-2), BigInt::zero()]
        );
        assert_eq!(
            b.largest_nonneg_integer_root().unwrap(),
            Some(BigInt::zero())
        );
        assert_eq!(
            b.rational_roots().unwrap(),
            vec![q(-13, 6), q(-2, 1), q(-11, 6), q(0, 1)]
        );
        let b = BPolynomial::from_integers(&[0, -6, 1]).unwrap();
        assert_eq!(
            b.largest_nonneg_integer_root().unwrap(),
            Some(BigInt::from(6))
        );
        let b = BPolynomial::from_integers(&[3, 2]).unwrap();
        assert_eq!(b.largest_nonneg_integer_root().unwrap(), None);
        let b = BPolynomial::from_integers(&[-2, -1]).unwrap();
        assert_eq!(b.to_string(), "s+2");
        assert_eq!(b.integer_roots().unwrap(), vec![BigInt::from(-2)]);
    }
}
