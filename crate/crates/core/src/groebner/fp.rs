//! Polynomials and reduced Gröbner bases over `F_p`.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::buchberger::PairSet;
use super::hilbert::{hilbert_series, HilbertSeries};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactlin::modp::{inv_mod, mul_mod};

/// Terms strictly descending in the ambient order, coefficients in `1..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FpPoly {
    pub(crate) terms: Vec<(Monomial, u64)>,
}

impl FpPoly {
    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> Monomial {
        self.terms[0].0
    }

    pub(crate) fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    /// Reduces a rational polynomial mod `p`, reordering to `order`.
    pub(crate) fn from_poly(f: &Poly, order: MonomialOrder, p: u64) -> Result<FpPoly> {
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in f.with_order(order).terms() {
            let x = c
                .to_mod(p)
                .ok_or_else(|| Error::Precondition(format!("the prime {p} divides a denominator; use rational mode")))?;
            if x != 0 {
                terms.push((*m, x));
            }
        }
        Ok(FpPoly { terms })
    }

    fn from_map(acc: HashMap<Monomial, u64>, order: MonomialOrder) -> FpPoly {
        let mut terms: Vec<(Monomial, u64)> = acc.into_iter().filter(|t| t.1 != 0).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        FpPoly { terms }
    }

    fn monic(mut self, p: u64) -> FpPoly {
        if let Some(&(_, c)) = self.terms.first() {
            let inv = inv_mod(c, p);
            for t in &mut self.terms {
                t.1 = mul_mod(t.1, inv, p);
            }
        }
        self
    }

    /// Substitutes `y_k := sum_j combo[j] y_j` (with `combo[k] = 0`) and
    /// drops `y_k`, renumbering later variables down by one.
    pub(crate) fn substitute_and_drop(&self, k: usize, combo: &[u64], order: MonomialOrder, p: u64) -> FpPoly {
        debug_assert_eq!(combo[k], 0);
        let shift = |j: usize| if j < k { j } else { j - 1 };
        let rename = |m: Monomial| {
            let mut out = Monomial::ONE;
            for i in m.support().filter(|&i| i != k) {
                for _ in 0..m.exponent(i) {
                    out = out * Monomial::var(shift(i));
                }
            }
            out
        };
        let image: Vec<(Monomial, u64)> =
            combo.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, c)| (Monomial::var(shift(j)), *c)).collect();
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for &(m, c) in &self.terms {
            let mut partial: HashMap<Monomial, u64> = HashMap::from([(rename(m), c)]);
            for _ in 0..m.exponent(k) {
                let mut next: HashMap<Monomial, u64> = HashMap::new();
                for (a, x) in &partial {
                    for (b, y) in &image {
                        let e = next.entry(*a * *b).or_insert(0);
                        *e = (*e + mul_mod(*x, *y, p)) % p;
                    }
                }
                partial = next;
            }
            for (a, x) in partial {
                let e = acc.entry(a).or_insert(0);
                *e = (*e + x) % p;
            }
        }
        FpPoly::from_map(acc, order)
    }
}

/// `a - c * m * b` for term lists sorted descending.
fn merge_sub(a: &[(Monomial, u64)], c: u64, m: Monomial, b: &[(Monomial, u64)], order: MonomialOrder, p: u64) -> Vec<(Monomial, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let bt = b.get(j).map(|(x, y)| (*x * m, p - mul_mod(*y, c, p)));
        match (a.get(i), bt) {
            (Some(&x), None) => {
                out.push(x);
                i += 1;
            }
            (None, Some(y)) => {
                out.push(y);
                j += 1;
            }
            (Some(&x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(y);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = (x.1 + y.1) % p;
                    if s != 0 {
                        out.push((x.0, s));
                    }
                    i += 1;
                    j += 1;
                }
            },
            (None, None) => unreachable!(),
        }
    }
    out.retain(|t| t.1 != 0 && t.1 != p);
    out
}

fn normal_form<'a>(f: &FpPoly, divisors: impl Iterator<Item = &'a FpPoly> + Clone, order: MonomialOrder, p: u64) -> FpPoly {
    let mut live = f.terms.clone();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < live.len() {
        let (m, c) = live[start];
        match divisors.clone().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                live = merge_sub(&live[start + 1..], c, g.lm().quotient_of(&m), &g.terms[1..], order, p);
                start = 0;
            }
            None => {
                rem.push(live[start]);
                start += 1;
            }
        }
    }
    FpPoly { terms: rem }
}

fn s_poly(f: &FpPoly, g: &FpPoly, order: MonomialOrder, p: u64) -> FpPoly {
    let l = f.lm().lcm(&g.lm());
    let a: Vec<(Monomial, u64)> = f.terms[1..].iter().map(|(x, c)| (*x * f.lm().quotient_of(&l), *c)).collect();
    FpPoly { terms: merge_sub(&a, 1, g.lm().quotient_of(&l), &g.terms[1..], order, p) }
}

/// A reduced Gröbner basis over `F_p`, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub(crate) struct FpBasis {
    pub(crate) p: u64,
    pub(crate) order: MonomialOrder,
    pub(crate) nvars: usize,
    pub(crate) gens: Vec<FpPoly>,
}

impl FpBasis {
    pub(crate) fn leads(&self) -> Vec<Monomial> {
        self.gens.iter().map(FpPoly::lm).collect()
    }

    pub(crate) fn hilbert_series(&self) -> Result<HilbertSeries> {
        hilbert_series(&self.leads(), self.nvars)
    }

    pub(crate) fn normal_form_of(&self, m: Monomial) -> Vec<(Monomial, u64)> {
        normal_form(&FpPoly { terms: vec![(m, 1)] }, self.gens.iter(), self.order, self.p).terms
    }
}

pub(crate) fn fp_buchberger(nvars: usize, gens: &[FpPoly], order: MonomialOrder, p: u64, max_pairs: usize) -> Result<FpBasis> {
    let mut polys: Vec<FpPoly> = Vec::new();
    let mut pairs = PairSet::default();
    let push = |polys: &mut Vec<FpPoly>, pairs: &mut PairSet, f: &FpPoly| -> Result<()> {
        let live = polys.iter().zip(&pairs.active).filter(|(_, a)| **a).map(|(g, _)| g);
        let h = normal_form(f, live, order, p).monic(p);
        if !h.is_zero() {
            pairs.add(h.lm(), max_pairs)?;
            polys.push(h);
        }
        Ok(())
    };
    for g in gens {
        push(&mut polys, &mut pairs, g)?;
    }
    while let Some(pr) = pairs.next(order) {
        let s = s_poly(&polys[pr.i], &polys[pr.j], order, p);
        push(&mut polys, &mut pairs, &s)?;
    }

    let mut basis: Vec<FpPoly> = polys.into_iter().zip(&pairs.active).filter(|(_, a)| **a).map(|(f, _)| f).collect();
    basis.sort_by(|a, b| order.cmp(&a.lm(), &b.lm()));
    let reduced: Vec<FpPoly> = (0..basis.len())
        .map(|k| {
            let others = basis.iter().enumerate().filter(move |(m, _)| *m != k).map(|(_, g)| g);
            let tail = normal_form(&FpPoly { terms: basis[k].terms[1..].to_vec() }, others, order, p);
            let mut terms = vec![basis[k].terms[0]];
            terms.extend(tail.terms);
            FpPoly { terms }
        })
        .collect();
    Ok(FpBasis { p, order, nvars, gens: reduced })
}
