use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// Default cap on pivot-recursion nodes.
pub const DEFAULT_MAX_NODES: usize = 1 << 22;

/// Hilbert series of `R/J` for a monomial ideal `J` in `nvars` variables:
/// `numerator / (1-t)^nvars`, also kept in reduced form
/// `reduced / (1-t)^pole_order` with `reduced(1) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub nvars: usize,
    pub numerator: Vec<i64>,
    pub reduced: Vec<i64>,
    pub pole_order: usize,
}

impl HilbertSeries {
    pub fn from_numerator(nvars: usize, numerator: Vec<i64>) -> Self {
        let numerator = trim(numerator);
        let mut reduced = numerator.clone();
        let mut pole_order = nvars;
        while pole_order > 0 && !reduced.is_empty() && reduced.iter().sum::<i64>() == 0 {
            reduced = div_one_minus_t(&reduced);
            pole_order -= 1;
        }
        HilbertSeries { nvars, numerator, reduced, pole_order }
    }

    /// Krull dimension of `R/J`.
    pub fn dimension(&self) -> usize {
        self.pole_order
    }

    pub fn codimension(&self) -> usize {
        self.nvars - self.pole_order
    }

    /// Reduced numerator at `t = 1`.
    pub fn degree(&self) -> i64 {
        self.reduced.iter().sum()
    }

    /// `dim_K (R/J)_k`.
    pub fn hilbert_function(&self, k: usize) -> i64 {
        let p = self.pole_order;
        if p == 0 {
            return self.reduced.get(k).copied().unwrap_or(0);
        }
        self.reduced
            .iter()
            .enumerate()
            .take(k + 1)
            .map(|(j, c)| c * binomial((k - j + p - 1) as u64, (p - 1) as u64) as i64)
            .sum()
    }

    /// Renders the reduced form, e.g. `(1 + 2t)/(1-t)^2`.
    pub fn render_reduced(&self) -> String {
        let num = render_poly(&self.reduced);
        match self.pole_order {
            0 => num,
            1 => format!("({num})/(1-t)"),
            p => format!("({num})/(1-t)^{p}"),
        }
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_reduced())
    }
}

/// Writes an integer polynomial in `t`, lowest degree first.
pub fn render_poly(c: &[i64]) -> String {
    let mut s = String::new();
    for (k, &a) in c.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let body = match (a.abs(), k) {
            (x, 0) => x.to_string(),
            (1, 1) => "t".into(),
            (x, 1) => format!("{x}t"),
            (1, k) => format!("t^{k}"),
            (x, k) => format!("{x}t^{k}"),
        };
        if s.is_empty() {
            if a < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if a < 0 { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn div_one_minus_t(p: &[i64]) -> Vec<i64> {
    // q_k = sum_{j<=k} p_j
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    trim(q)
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

/// Inclusion-minimal generators, sorted.
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut g: Vec<Monomial> = gens.to_vec();
    g.sort_by_key(|m| (m.degree(), *m));
    g.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(g.len());
    for m in g {
        if !out.iter().any(|x| x.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

struct Numerator {
    memo: HashMap<Vec<Monomial>, Vec<i64>>,
    nodes: usize,
    limit: usize,
}

impl Numerator {
    /// Numerator over `(1-t)^n` of `R/<gens>`; `gens` minimal and sorted.
    fn run(&mut self, gens: Vec<Monomial>) -> Result<Vec<i64>> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Resource { what: "Hilbert recursion nodes", limit: self.limit });
        }
        if gens.iter().any(Monomial::is_one) {
            return Ok(Vec::new());
        }
        let mut counts = [0usize; super::monomial::MAX_VARS];
        for m in &gens {
            for i in m.support() {
                counts[i] += 1;
            }
        }
        let (pivot, &freq) = counts.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).unwrap();
        if freq <= 1 {
            // pairwise coprime: product of (1 - t^deg)
            return Ok(gens.iter().fold(vec![1], |acc, m| {
                let mut f = vec![0i64; m.degree() as usize + 1];
                f[0] = 1;
                f[m.degree() as usize] = -1;
                mul(&acc, &f)
            }));
        }
        if let Some(v) = self.memo.get(&gens) {
            return Ok(v.clone());
        }
        // HN(J) = (1-t) HN(J without pivot multiples) + t HN(J : pivot)
        let without: Vec<Monomial> = gens.iter().copied().filter(|m| m.exponent(pivot) == 0).collect();
        let colon = minimalize(&gens.iter().map(|m| m.colon_var(pivot)).collect::<Vec<_>>());
        let a = self.run(without)?;
        let b = self.run(colon)?;
        let v = add(&mul(&[1, -1], &a), &mul(&[0, 1], &b));
        self.memo.insert(gens, v.clone());
        Ok(v)
    }
}

/// Hilbert series of `R/<gens>` with the default node limit.
pub fn hilbert_series(gens: &[Monomial], nvars: usize) -> Result<HilbertSeries> {
    hilbert_series_with(gens, nvars, DEFAULT_MAX_NODES)
}

pub fn hilbert_series_with(gens: &[Monomial], nvars: usize, max_nodes: usize) -> Result<HilbertSeries> {
    for m in gens {
        if m.support().any(|i| i >= nvars) {
            return Err(Error::Invalid(format!("monomial {m} outside ring of {nvars} variables")));
        }
    }
    let mut engine = Numerator { memo: HashMap::new(), nodes: 0, limit: max_nodes };
    let num = engine.run(minimalize(gens))?;
    Ok(HilbertSeries::from_numerator(nvars, num))
}

/// `(dimension, codimension, degree)`.
pub fn dimension_codimension(hs: &HilbertSeries) -> (usize, usize, i64) {
    (hs.dimension(), hs.codimension(), hs.degree())
}

/// Monomials of degree `deg` outside the monomial ideal `<leads>`, in
/// descending order.
pub fn standard_monomials(leads: &[Monomial], nvars: usize, deg: u32, order: MonomialOrder) -> Vec<Monomial> {
    monomials_of_degree(nvars, deg, order).into_iter().filter(|m| !leads.iter().any(|l| l.divides(m))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sq(ix: &[usize]) -> Monomial {
        Monomial::squarefree(ix)
    }

    #[test]
    fn principal_ideal() {
        let hs = hilbert_series(&[sq(&[0, 1, 2])], 4).unwrap();
        assert_eq!(hs.numerator, vec![1, 0, 0, -1]);
        assert_eq!(hs.reduced, vec![1, 1, 1]);
        assert_eq!(dimension_codimension(&hs), (3, 1, 3));
        assert_eq!(hs.to_string(), "(1 + t + t^2)/(1-t)^3");
    }

    #[test]
    fn zero_ideal() {
        let hs = hilbert_series(&[], 3).unwrap();
        assert_eq!(hs.reduced, vec![1]);
        assert_eq!(dimension_codimension(&hs), (3, 0, 1));
        assert_eq!(hs.hilbert_function(2), 6);
    }

    #[test]
    fn three_edges() {
        let hs = hilbert_series(&[sq(&[0, 1]), sq(&[0, 2]), sq(&[1, 2])], 4).unwrap();
        assert_eq!(hs.reduced, vec![1, 2]);
        assert_eq!(hs.pole_order, 2);
        assert_eq!(hs.degree(), 3);
    }

    #[test]
    fn unit_and_artinian() {
        let hs = hilbert_series(&[Monomial::ONE], 2).unwrap();
        assert!(hs.reduced.is_empty());
        assert_eq!(hs.hilbert_function(0), 0);
        let hs = hilbert_series(&[Monomial::var(0) * Monomial::var(0), Monomial::var(1)], 2).unwrap();
        assert_eq!((hs.pole_order, hs.reduced.clone()), (0, vec![1, 1]));
    }

    #[test]
    fn node_limit() {
        let gens: Vec<Monomial> = (0..6).flat_map(|i| (i + 1..6).map(move |j| sq(&[i, j]))).collect();
        assert!(matches!(hilbert_series_with(&gens, 6, 3), Err(Error::Resource { .. })));
    }

    fn ideal() -> impl Strategy<Value = Vec<Monomial>> {
        proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..6)
            .prop_map(|v| v.iter().map(|e| Monomial::from_exponents(e)).filter(|m| !m.is_one()).collect())
    }

    proptest! {
        #[test]
        fn matches_standard_monomial_count(gens in ideal()) {
            let hs = hilbert_series(&gens, 4).unwrap();
            for k in 0..7 {
                let count = standard_monomials(&gens, 4, k, MonomialOrder::Grevlex).len() as i64;
                prop_assert_eq!(hs.hilbert_function(k as usize), count);
            }
            prop_assert!(hs.degree() > 0);
            let codim_lower = if gens.is_empty() { 0 } else { 1 };
            prop_assert!(hs.codimension() >= codim_lower);
        }
    }
}
