use std::collections::BTreeMap;

use serde::Serialize;

use super::monomial::Monomial;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactlin::{rank_of_rows, QMatrix, Rational};

/// Linear syzygies `(L_1, ..., L_s)` with `sum L_i f_i = 0` among quadrics.
///
/// Linearly dependent quadrics are first thinned to a greedy independent
/// subset (`used`); dropped positions carry zero in every syzygy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSyzygies {
    pub used: Vec<usize>,
    pub basis: Vec<Vec<Poly>>,
}

impl LinearSyzygies {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `candidate` lies in the span of the basis.
    pub fn contains(&self, candidate: &[Poly], nvars: usize) -> bool {
        let flat = |v: &[Poly]| -> Vec<Rational> {
            v.iter()
                .flat_map(|l| (0..nvars).map(move |k| l.coefficient(&Monomial::var(k))))
                .collect()
        };
        let cols = candidate.len() * nvars;
        let mut rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| flat(b)).collect();
        let before = rank_of_rows(cols, &rows);
        rows.push(flat(candidate));
        rank_of_rows(cols, &rows) == before
    }
}

/// Basis of the space of linear syzygies of `quadrics`, all in `nvars`
/// variables and homogeneous of degree 2.
pub fn linear_syzygies(quadrics: &[Poly], nvars: usize) -> Result<LinearSyzygies> {
    for f in quadrics {
        if f.is_zero() || !f.is_homogeneous() || f.degree() != 2 {
            return Err(Error::Precondition(format!("linear syzygies need homogeneous quadrics, got {f}")));
        }
    }
    let s = quadrics.len();
    let order = quadrics.first().map(Poly::order).unwrap_or_default();

    // greedy independent subset
    let quad_index: BTreeMap<Monomial, usize> = quadrics
        .iter()
        .flat_map(|f| f.terms().iter().map(|(m, _)| *m))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let as_row = |f: &Poly| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); quad_index.len()];
        for (m, c) in f.terms() {
            v[quad_index[m]] = c.clone();
        }
        v
    };
    let mut used = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (i, f) in quadrics.iter().enumerate() {
        rows.push(as_row(f));
        if rank_of_rows(quad_index.len(), &rows) == rows.len() {
            used.push(i);
        } else {
            rows.pop();
        }
    }

    // unknown a_{t,k}: coefficient of y_k in L_{used[t]}, column t*nvars + k
    let mut cubic_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (t, &i) in used.iter().enumerate() {
        for k in 0..nvars {
            for (m, c) in quadrics[i].terms() {
                let cube = *m * Monomial::var(k);
                let next = cubic_index.len();
                let row = *cubic_index.entry(cube).or_insert(next);
                entries.push((row, t * nvars + k, c.clone()));
            }
        }
    }
    let cols = used.len() * nvars;
    let mut dense = vec![vec![Rational::zero(); cols]; cubic_index.len()];
    for (r, c, v) in entries {
        dense[r][c] += &v;
    }
    let kernel = QMatrix::from_rows(cols, dense).nullspace();

    let basis = kernel
        .into_iter()
        .map(|v| {
            let mut out = vec![Poly::zero(nvars, order); s];
            for (t, &i) in used.iter().enumerate() {
                out[i] = Poly::from_terms(
                    nvars,
                    order,
                    (0..nvars).map(|k| (Monomial::var(k), v[t * nvars + k].clone())),
                );
            }
            out
        })
        .collect();
    Ok(LinearSyzygies { used, basis })
}
