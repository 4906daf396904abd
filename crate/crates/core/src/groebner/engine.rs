//! Fraction-free Buchberger engine for left ideals and left submodules of
//! free modules over a (possibly homogenized) Weyl algebra.
//!
//! Polynomials are vectors of terms sorted by a precomputed matrix-order key
//! (component rank first), largest first. Coefficients are integers; every
//! basis element is primitive with a positive leading coefficient.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{GroebnerError, Limits};
use crate::order::TermOrder;
use crate::weyl::monomial::monomial_product;
use crate::weyl::{Monomial, WeylContext};

pub(crate) type Key = SmallVec<[i64; 12]>;

pub(crate) struct Keyer {
    rows: Vec<Vec<i64>>,
    comp_rank: Vec<i64>,
}

impl Keyer {
    pub fn new(order: &TermOrder, nvars: usize, comp_rank: Vec<i64>) -> Self {
        Keyer {
            rows: order.matrix(nvars),
            comp_rank,
        }
    }

    pub fn key(&self, m: &Monomial, comp: usize) -> Key {
        let mut k = Key::with_capacity(self.rows.len() + 1);
        k.push(self.comp_rank[comp]);
        let e = m.exponents();
        for r in &self.rows {
            k.push(r.iter().zip(e).map(|(a, &b)| a * i64::from(b)).sum());
        }
        k
    }

    fn mono_shift(&self, m: &Monomial) -> Key {
        let e = m.exponents();
        self.rows
            .iter()
            .map(|r| r.iter().zip(e).map(|(a, &b)| a * i64::from(b)).sum())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: Key,
    pub mono: Monomial,
    pub comp: usize,
    pub coef: BigInt,
}

/// Terms in strictly descending key order with nonzero coefficients.
#[derive(Clone, Debug, Default)]
pub(crate) struct Poly {
    pub terms: Vec<Term>,
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = g.gcd(&t.coef);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.is_zero() {
            return;
        }
        let mut g = self.content();
        if self.terms[0].coef.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.coef = &t.coef / &g;
            }
        }
    }
}

pub(crate) struct Engine<'a> {
    pub ctx: &'a WeylContext,
    pub keyer: Keyer,
    pub limits: Limits,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    deg: u32,
}

impl<'a> Engine<'a> {
    pub fn new(
        ctx: &'a WeylContext,
        order: &TermOrder,
        comp_rank: Vec<i64>,
        limits: Limits,
    ) -> Self {
        Engine {
            ctx,
            keyer: Keyer::new(order, ctx.num_gens(), comp_rank),
            limits,
        }
    }

    /// Builds an integer polynomial proportional to the given rational
    /// terms; returns it together with the positive factor used.
    pub fn integral_poly<I>(&self, terms: I) -> (Poly, BigInt)
    where
        I: IntoIterator<Item = (Monomial, usize, BigRational)>,
    {
        let raw: Vec<(Monomial, usize, BigRational)> =
            terms.into_iter().filter(|t| !t.2.is_zero()).collect();
        let mut den = BigInt::one();
        for (_, _, c) in &raw {
            den = den.lcm(c.denom());
        }
        let mut out: Vec<Term> = raw
            .into_iter()
            .map(|(mono, comp, c)| {
                let coef = (c * BigRational::from_integer(den.clone())).to_integer();
                Term {
                    key: self.keyer.key(&mono, comp),
                    mono,
                    comp,
                    coef,
                }
            })
            .collect();
        out.sort_by(|a, b| b.key.cmp(&a.key));
        (
            Poly {
                terms: merge_sorted_duplicates(out),
            },
            den,
        )
    }

    /// `m * g` in the Weyl algebra, keeping `g`'s components.
    pub fn mul_mono(&self, m: &Monomial, g: &Poly) -> Poly {
        let shift = self.keyer.mono_shift(m);
        let mut main: Vec<Term> = Vec::with_capacity(g.terms.len());
        let mut extra: Vec<Term> = Vec::new();
        for t in &g.terms {
            let prods = monomial_product(self.ctx, m, &t.mono);
            let mut it = prods.into_iter();
            let (mono, k) = it.next().expect("product has a main term");
            debug_assert!(k.is_one());
            let mut key = t.key.clone();
            for (a, s) in key.iter_mut().skip(1).zip(shift.iter()) {
                *a += s;
            }
            main.push(Term {
                key,
                mono,
                comp: t.comp,
                coef: t.coef.clone(),
            });
            for (mono, k) in it {
                extra.push(Term {
                    key: self.keyer.key(&mono, t.comp),
                    mono,
                    comp: t.comp,
                    coef: &t.coef * k,
                });
            }
        }
        if extra.is_empty() {
            return Poly { terms: main };
        }
        extra.sort_by(|a, b| b.key.cmp(&a.key));
        let extra = merge_sorted_duplicates(extra);
        Poly {
            terms: lin_comb(&BigInt::one(), &main, &BigInt::from(-1), &extra),
        }
    }

    fn find_reducer(&self, t: &Term, basis: &[Poly]) -> Option<usize> {
        let deg = t.mono.degree();
        basis.iter().position(|g| {
            let l = g.lead();
            l.comp == t.comp && l.mono.degree() <= deg && l.mono.divides(&t.mono)
        })
    }

    /// Reduces `p` modulo `basis`. With `full` every term is reduced,
    /// otherwise only the leading term until it is irreducible.
    ///
    /// Returns `(r, s)` with `r / s ≡ p` modulo the left span of `basis`,
    /// `s` a positive rational.
    pub fn reduce(&self, p: Poly, basis: &[Poly], full: bool) -> (Poly, BigRational) {
        let mut cur = p.terms;
        let mut start = 0usize;
        let mut rem: Vec<Term> = Vec::new();
        let mut scale = BigRational::one();
        let mut steps = 0usize;
        while start < cur.len() {
            let lt = &cur[start];
            match self.find_reducer(lt, basis) {
                Some(gi) => {
                    let g = &basis[gi];
                    let glt = g.lead();
                    let m = lt.mono.div(&glt.mono).expect("divisible");
                    let gcd = lt.coef.gcd(&glt.coef);
                    let a = &glt.coef / &gcd;
                    let b = &lt.coef / &gcd;
                    let q = self.mul_mono(&m, g);
                    debug_assert_eq!(q.terms[0].key, lt.key);
                    cur = lin_comb(&a, &cur[start + 1..], &b, &q.terms[1..]);
                    start = 0;
                    if !a.is_one() {
                        for t in rem.iter_mut() {
                            t.coef *= &a;
                        }
                        scale *= BigRational::from_integer(a);
                    }
                    steps += 1;
                    if steps.is_multiple_of(24) {
                        let mut c = BigInt::zero();
                        for t in rem.iter().chain(cur.iter()) {
                            c = c.gcd(&t.coef);
                            if c.is_one() {
                                break;
                            }
                        }
                        if !c.is_one() && !c.is_zero() {
                            for t in rem.iter_mut().chain(cur.iter_mut()) {
                                t.coef = &t.coef / &c;
                            }
                            scale /= BigRational::from_integer(c);
                        }
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    rem.push(cur[start].clone());
                    start += 1;
                }
            }
        }
        rem.extend(cur.drain(start..));
        (Poly { terms: rem }, scale)
    }

    fn spoly(&self, gi: &Poly, gj: &Poly, lcm: &Monomial) -> Poly {
        let (li, lj) = (gi.lead(), gj.lead());
        let mi = lcm.div(&li.mono).expect("lcm");
        let mj = lcm.div(&lj.mono).expect("lcm");
        let qi = self.mul_mono(&mi, gi);
        let qj = self.mul_mono(&mj, gj);
        let gcd = li.coef.gcd(&lj.coef);
        let a = &lj.coef / &gcd;
        let b = &li.coef / &gcd;
        Poly {
            terms: lin_comb(&a, &qi.terms[1..], &b, &qj.terms[1..]),
        }
    }

    /// Reduced Gröbner basis of the left span of `gens`.
    pub fn groebner(&self, gens: Vec<Poly>) -> Result<Vec<Poly>, GroebnerError> {
        let mut basis: Vec<Poly> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let (mut r, _) = self.reduce(g, &basis, true);
            if r.is_zero() {
                continue;
            }
            r.make_primitive();
            self.insert(&mut basis, &mut pairs, r)?;
        }
        let mut steps = 0usize;
        while !pairs.is_empty() {
            let idx = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (p, q) = (&pairs[a], &pairs[b]);
                    p.deg.cmp(&q.deg).then(p.i.cmp(&q.i)).then(p.j.cmp(&q.j))
                })
                .expect("nonempty");
            let pair = pairs.swap_remove(idx);
            steps += 1;
            if let Some(cap) = self.limits.max_steps {
                if steps > cap {
                    return Err(GroebnerError::ResourceLimit(format!(
                        "more than {cap} S-pairs processed (basis size {})",
                        basis.len()
                    )));
                }
            }
            let s = self.spoly(&basis[pair.i], &basis[pair.j], &pair.lcm);
            if s.is_zero() {
                continue;
            }
            let (r, _) = self.reduce(s, &basis, false);
            if r.is_zero() {
                continue;
            }
            let (mut r, _) = self.reduce(r, &basis, true);
            r.make_primitive();
            self.insert(&mut basis, &mut pairs, r)?;
        }
        Ok(self.interreduce(basis))
    }

    fn insert(
        &self,
        basis: &mut Vec<Poly>,
        pairs: &mut Vec<Pair>,
        h: Poly,
    ) -> Result<(), GroebnerError> {
        let t = basis.len();
        let (lt_mono, lt_comp) = (h.lead().mono.clone(), h.lead().comp);
        if let Some(cap) = self.limits.max_degree {
            if lt_mono.degree() > cap {
                return Err(GroebnerError::ResourceLimit(format!(
                    "basis element of degree {} exceeds the cap {cap}",
                    lt_mono.degree()
                )));
            }
        }
        // Chain criterion on the queued pairs.
        pairs.retain(|p| {
            if p.comp != lt_comp || !lt_mono.divides(&p.lcm) {
                return true;
            }
            let li = &basis[p.i].lead().mono;
            let lj = &basis[p.j].lead().mono;
            li.lcm(&lt_mono) == p.lcm || lj.lcm(&lt_mono) == p.lcm
        });
        let candidates: Vec<(usize, Monomial)> = basis
            .iter()
            .enumerate()
            .filter(|(_, g)| g.lead().comp == lt_comp)
            .map(|(i, g)| (i, g.lead().mono.lcm(&lt_mono)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (i, l) in &candidates {
            let dominated = candidates.iter().any(|(_, l2)| l2 != l && l2.divides(l));
            if dominated || kept.iter().any(|(_, l2)| l2 == l) {
                continue;
            }
            kept.push((*i, l.clone()));
        }
        for (i, lcm) in kept {
            let deg = lcm.degree();
            pairs.push(Pair {
                i,
                j: t,
                lcm,
                comp: lt_comp,
                deg,
            });
        }
        basis.push(h);
        Ok(())
    }

    /// Minimalizes, tail-reduces and sorts a Gröbner basis.
    pub fn interreduce(&self, mut basis: Vec<Poly>) -> Vec<Poly> {
        basis.retain(|g| !g.is_zero());
        basis.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
        let mut minimal: Vec<Poly> = Vec::new();
        for g in basis {
            let l = g.lead();
            let redundant = minimal
                .iter()
                .any(|m| m.lead().comp == l.comp && m.lead().mono.divides(&l.mono));
            if !redundant {
                minimal.push(g);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let (mut r, _) = self.reduce(minimal[i].clone(), &others, true);
            r.make_primitive();
            out.push(r);
        }
        out
    }
}

/// `a * p - b * q` for sorted term slices.
pub(crate) fn lin_comb(a: &BigInt, p: &[Term], b: &BigInt, q: &[Term]) -> Vec<Term> {
    let a_one = a.is_one();
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    let scale_p = |t: &Term| Term {
        key: t.key.clone(),
        mono: t.mono.clone(),
        comp: t.comp,
        coef: if a_one { t.coef.clone() } else { &t.coef * a },
    };
    let scale_q = |t: &Term| Term {
        key: t.key.clone(),
        mono: t.mono.clone(),
        comp: t.comp,
        coef: -(&t.coef * b),
    };
    while i < p.len() && j < q.len() {
        match p[i].key.cmp(&q[j].key) {
            Ordering::Greater => {
                out.push(scale_p(&p[i]));
                i += 1;
            }
            Ordering::Less => {
                out.push(scale_q(&q[j]));
                j += 1;
            }
            Ordering::Equal => {
                let c = if a_one {
                    p[i].coef.clone()
                } else {
                    &p[i].coef * a
                } - &q[j].coef * b;
                if !c.is_zero() {
                    out.push(Term {
                        key: p[i].key.clone(),
                        mono: p[i].mono.clone(),
                        comp: p[i].comp,
                        coef: c,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(p[i..].iter().map(scale_p));
    out.extend(q[j..].iter().map(scale_q));
    out
}

fn merge_sorted_duplicates(terms: Vec<Term>) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        if let Some(last) = out.last_mut() {
            if last.key == t.key {
                last.coef += t.coef;
                if last.coef.is_zero() {
                    out.pop();
                }
                continue;
            }
        }
        out.push(t);
    }
    out
}
