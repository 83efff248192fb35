use std::cmp::Ordering;

use super::hilbert::{hilbert_series, HilbertSeries};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{normal_form, Poly};
use crate::error::{Error, Result};

/// Default cap on the number of queued S-pairs.
pub const DEFAULT_MAX_PAIRS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerConfig {
    pub max_pairs: usize,
}

impl Default for BuchbergerConfig {
    fn default() -> Self {
        BuchbergerConfig { max_pairs: DEFAULT_MAX_PAIRS }
    }
}

/// A reduced Gröbner basis: monic generators, sorted by ascending leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    nvars: usize,
    gens: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        assert!(f.nvars() <= self.nvars, "polynomial lives in a larger ring");
        normal_form(&f.with_order(self.order).widen(self.nvars), self.gens.iter())
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Minimal generators of the initial ideal. For a reduced basis these
    /// are exactly the leading monomials.
    pub fn initial_ideal(&self) -> Vec<Monomial> {
        self.gens.iter().map(Poly::lm).collect()
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        hilbert_series(&self.initial_ideal(), self.nvars)
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        (0..self.gens.len()).all(|j| (0..j).all(|i| self.normal_form(&s_poly(&self.gens[i], &self.gens[j])).is_zero()))
    }
}

/// `lcm/lm(f) * f - lcm/lm(g) * g` for monic `f`, `g`.
pub fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let l = f.lm().lcm(&g.lm());
    let a = f.mul_term(f.lm().quotient_of(&l), &f.lc().recip());
    let b = g.lm().quotient_of(&l);
    a.sub_mul_term(&g.lc().recip(), b, g)
}

#[derive(Clone, Copy, Debug)]
pub(super) struct Pair {
    pub(super) i: usize,
    pub(super) j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `nvars`
/// variables with the default pair limit.
pub fn buchberger(nvars: usize, gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(nvars, gens, order, BuchbergerConfig::default())
}

pub fn buchberger_with(nvars: usize, gens: &[Poly], order: MonomialOrder, config: BuchbergerConfig) -> Result<GroebnerBasis> {
    let mut polys: Vec<Poly> = Vec::new();
    let mut pairs = PairSet::default();

    for g in gens {
        if g.nvars() > nvars {
            return Err(Error::Invalid(format!("generator {g} has more than {nvars} variables")));
        }
        let g = g.with_order(order).widen(nvars);
        let h = normal_form(&g, active_iter(&polys, &pairs.active)).monic();
        if !h.is_zero() {
            pairs.add(h.lm(), config.max_pairs)?;
            polys.push(h);
        }
    }

    while let Some(p) = pairs.next(order) {
        let s = s_poly(&polys[p.i], &polys[p.j]);
        let h = normal_form(&s, active_iter(&polys, &pairs.active)).monic();
        if !h.is_zero() {
            pairs.add(h.lm(), config.max_pairs)?;
            polys.push(h);
        }
    }

    let basis: Vec<Poly> = polys.into_iter().zip(pairs.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    Ok(GroebnerBasis { order, nvars, gens: reduce_basis(basis, order) })
}

fn active_iter<'a>(polys: &'a [Poly], active: &'a [bool]) -> impl Iterator<Item = &'a Poly> + Clone {
    polys.iter().zip(active).filter(|(_, a)| **a).map(|(p, _)| p)
}

/// Critical pairs over a growing list of leading monomials, pruned by the
/// Gebauer–Möller criteria. `active[i]` is false once `leads[i]` is
/// divisible by a later lead.
#[derive(Debug, Default)]
pub(super) struct PairSet {
    pub(super) leads: Vec<Monomial>,
    pub(super) active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl PairSet {
    /// Removes the pair with the smallest lcm, ties broken by index.
    pub(super) fn next(&mut self, order: MonomialOrder) -> Option<Pair> {
        let k = (0..self.pairs.len()).min_by(|&a, &b| {
            let (x, y) = (&self.pairs[a], &self.pairs[b]);
            order.cmp(&x.lcm, &y.lcm).then((x.i, x.j).cmp(&(y.i, y.j)))
        })?;
        Some(self.pairs.swap_remove(k))
    }

    /// Registers a new basis element with leading monomial `lh`.
    pub(super) fn add(&mut self, lh: Monomial, max_pairs: usize) -> Result<()> {
        let t = self.leads.len();
        let leads = &self.leads;
        let cand: Vec<Pair> =
            (0..t).filter(|&i| self.active[i]).map(|i| Pair { i, j: t, lcm: leads[i].lcm(&lh) }).collect();

        // Chain criterion among the new pairs: drop (g, h) if another new
        // pair's lcm properly divides its lcm; among equal lcms keep one.
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in cand.iter().enumerate() {
            let coprime = leads[p.i].is_coprime(&lh);
            let dominated =
                cand.iter().enumerate().any(|(m, q)| m != k && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || m < k));
            if coprime || !dominated {
                kept.push(*p);
            }
        }
        // Any pair whose lcm equals a coprime pair's lcm is redundant too.
        let coprime_lcms: Vec<Monomial> = kept.iter().filter(|p| leads[p.i].is_coprime(&lh)).map(|p| p.lcm).collect();
        kept.retain(|p| !leads[p.i].is_coprime(&lh) && !coprime_lcms.contains(&p.lcm));

        // Old pairs made redundant by h.
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && leads[p.i].lcm(&lh) != p.lcm && leads[p.j].lcm(&lh) != p.lcm)
        });
        self.pairs.extend(kept);
        if self.pairs.len() > max_pairs {
            return Err(Error::Resource { what: "S-pairs", limit: max_pairs });
        }

        for i in 0..t {
            if self.active[i] && lh.divides(&self.leads[i]) {
                self.active[i] = false;
            }
        }
        self.leads.push(lh);
        self.active.push(true);
        Ok(())
    }
}

/// Minimalizes, tail-reduces and sorts a Gröbner basis.
fn reduce_basis(mut basis: Vec<Poly>, order: MonomialOrder) -> Vec<Poly> {
    basis.sort_by(|a, b| order.cmp(&a.lm(), &b.lm()));
    basis.dedup_by(|a, b| a.lm() == b.lm());
    let minimal: Vec<Poly> = basis
        .iter()
        .filter(|g| !basis.iter().any(|h| h.lm() != g.lm() && h.lm().divides(&g.lm())))
        .cloned()
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others = minimal.iter().enumerate().filter(move |(m, _)| *m != k).map(|(_, p)| p);
        let lead = Poly::from_sorted_unchecked(g.nvars(), order, g.terms()[..1].to_vec());
        let tail = Poly::from_sorted_unchecked(g.nvars(), order, g.terms()[1..].to_vec());
        out.push(lead.add(&normal_form(&tail, others)).monic());
    }
    debug_assert!(out.windows(2).all(|w| order.cmp(&w[0].lm(), &w[1].lm()) == Ordering::Less));
    out
}

/// Whether the two generating sets define the same ideal.
pub fn ideal_equal(nvars: usize, a: &[Poly], b: &[Poly], order: MonomialOrder) -> Result<bool> {
    let ga = buchberger(nvars, a, order)?;
    let gb = buchberger(nvars, b, order)?;
    Ok(ga == gb)
}
