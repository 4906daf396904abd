use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use smallvec::SmallVec;

use super::WeylContext;

/// Exponent vector over the generators of a context, read in normal order
/// (all `x`-type factors to the left of all `∂`-type factors).
///
/// The derived `Ord` is the structural degree-reverse-lexicographic order on
/// the full exponent vector; it fixes the iteration order of term maps.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 10]>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(SmallVec::from_elem(0, len))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn generator(len: usize, idx: usize) -> Self {
        let mut m = Self::one(len);
        m.0[idx] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, idx: usize) -> u32 {
        self.0[idx]
    }

    pub fn set(&mut self, idx: usize, e: u32) {
        self.0[idx] = e;
    }

    /// Commutative divisibility of exponent vectors.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Exponent-wise sum (the commutative product).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Exponent-wise difference; `None` unless `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Renders the monomial with the context's generator names, e.g. `x^2*Dx`.
    /// Returns an empty string for the unit monomial.
    pub fn render(&self, ctx: &WeylContext) -> String {
        let mut parts = Vec::new();
        for (idx, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ctx.name(idx)),
                _ => parts.push(format!("{}^{}", ctx.name(idx), e)),
            }
        }
        parts.join("*")
    }
}

pub(crate) fn cmp_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// `j! * C(a, j) * C(b, j)`: the coefficient of `x^{b-j} ∂^{a-j}` in `∂^a x^b`.
pub(crate) fn reorder_coefficient(a: u32, b: u32, j: u32) -> BigInt {
    let mut c = BigInt::one();
    // a!/(a-j)! * C(b, j) = a(a-1)..(a-j+1) * b(b-1)..(b-j+1) / j!
    for t in 0..j {
        c *= a - t;
        c *= b - t;
    }
    let mut fact = BigInt::one();
    for t in 2..=j {
        fact *= t;
    }
    c / fact
}

/// Normal-ordered expansion of the operator product `left * right` of two
/// monomials. In a homogenized context each commutator step contributes
/// `h^2`.
pub(crate) fn monomial_product(
    ctx: &WeylContext,
    left: &Monomial,
    right: &Monomial,
) -> Vec<(Monomial, BigInt)> {
    let base = left.mul(right);
    let mut out = vec![(base, BigInt::one())];
    let h = ctx.h();
    for &(xi, di) in ctx.pairs() {
        let a = left.0[di];
        let b = right.0[xi];
        let top = a.min(b);
        if top == 0 {
            continue;
        }
        let coeffs: Vec<BigInt> = (0..=top).map(|j| reorder_coefficient(a, b, j)).collect();
        let mut next = Vec::with_capacity(out.len() * coeffs.len());
        for (m, c) in &out {
            for (j, cj) in coeffs.iter().enumerate() {
                let j = j as u32;
                let mut mj = m.clone();
                mj.0[xi] -= j;
                mj.0[di] -= j;
                if let Some(h) = h {
                    mj.0[h] += 2 * j;
                }
                next.push((mj, c * cj));
            }
        }
        out = next;
    }
    out
}
