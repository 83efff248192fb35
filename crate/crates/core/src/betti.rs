//! Graded Betti numbers of `R/I` from Koszul homology.
//!
//! `b_{i,j}` is the homology of `Λ^i K^n ⊗ R/I` in internal degree `i+j`.
//! Before building the complex, linear forms that are certified
//! nonzerodivisors on `R/I` are cut away one at a time; this preserves the
//! graded Betti numbers and shrinks the strands.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::modp::{check_prime, rank_dense_mod};
use crate::exactlin::{QMatrix, Rational, DEFAULT_PRIME};
use crate::groebner::fp::{fp_buchberger, FpBasis, FpPoly};
use crate::groebner::{
    binomial, buchberger, GroebnerBasis, HilbertSeries, Monomial, MonomialOrder, Poly, DEFAULT_MAX_PAIRS,
};
use crate::groebner::standard_monomials as standard_monomials_of;

/// Field in which strand ranks are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "p")]
pub enum FieldMode {
    Rational,
    Prime(u64),
}

impl Default for FieldMode {
    fn default() -> Self {
        FieldMode::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Rational => f.write_str("rational"),
            FieldMode::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

/// Default cap on the number of entries of one strand matrix.
pub const DEFAULT_MAX_MATRIX_ENTRIES: usize = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiOptions {
    pub max_i: Option<usize>,
    pub max_j: Option<usize>,
    pub field: FieldMode,
    /// Cut by certified regular linear forms first.
    pub cut: bool,
    pub max_matrix_entries: usize,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions {
            max_i: None,
            max_j: None,
            field: FieldMode::default(),
            cut: true,
            max_matrix_entries: DEFAULT_MAX_MATRIX_ENTRIES,
        }
    }
}

/// Graded Betti numbers `b_{i,j}` for `i <= max_i`, `j <= max_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub max_i: usize,
    pub max_j: usize,
    /// `rows[j][i] = b_{i,j}`.
    pub rows: Vec<Vec<u64>>,
    pub field: FieldMode,
    /// Prime-field ranks can only undercount; the table is then exact for
    /// all but finitely many primes.
    pub probabilistic: bool,
    /// Number of regular linear forms cut before building the complex.
    pub cut: usize,
}

impl BettiTable {
    pub fn new(max_i: usize, max_j: usize, field: FieldMode) -> Self {
        BettiTable {
            max_i,
            max_j,
            rows: vec![vec![0; max_i + 1]; max_j + 1],
            field,
            probabilistic: matches!(field, FieldMode::Prime(_)),
            cut: 0,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows.get(j).and_then(|r| r.get(i)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.rows[j][i] = v;
    }

    pub fn totals(&self) -> Vec<u64> {
        let last = self.last_column();
        (0..=last).map(|i| self.rows.iter().map(|r| r[i]).sum()).collect()
    }

    fn last_column(&self) -> usize {
        (0..=self.max_i).rev().find(|&i| self.rows.iter().any(|r| r[i] != 0)).unwrap_or(0)
    }

    fn last_row(&self) -> usize {
        (0..=self.max_j).rev().find(|&j| self.rows[j].iter().any(|&v| v != 0)).unwrap_or(0)
    }

    /// Nonzero rows, trimmed, as `(j, b_{0,j}, ..., b_{c,j})`.
    pub fn trimmed_rows(&self) -> Vec<Vec<u64>> {
        let c = self.last_column();
        (0..=self.last_row()).map(|j| self.rows[j][..=c].to_vec()).collect()
    }

    /// Same numbers, ignoring field and bookkeeping.
    pub fn same_entries(&self, other: &BettiTable) -> bool {
        self.totals() == other.totals() && self.trimmed_rows() == other.trimmed_rows()
    }
}

/// Renders like a Macaulay2 diagram, with `--` for zero entries:
///
/// ```text
/// total: 1 4 6 4 1
///     0: 1 -- -- -- --
/// ```
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let totals = self.totals();
        let rows = self.trimmed_rows();
        let cell = |v: u64| if v == 0 { "--".to_string() } else { v.to_string() };
        let widths: Vec<usize> = (0..totals.len())
            .map(|i| rows.iter().map(|r| cell(r[i]).len()).chain([totals[i].to_string().len()]).max().unwrap())
            .collect();
        let label_w = "total:".len().max(format!("{}:", rows.len().saturating_sub(1)).len());
        write!(f, "{:>label_w$}", "total:")?;
        for (v, w) in totals.iter().zip(&widths) {
            write!(f, " {:>w$}", v)?;
        }
        for (j, r) in rows.iter().enumerate() {
            write!(f, "\n{:>label_w$}", format!("{j}:"))?;
            for (v, w) in r.iter().zip(&widths) {
                write!(f, " {:>w$}", cell(*v))?;
            }
        }
        Ok(())
    }
}

/// Closed form for a rank-2 arrangement of `d` points:
/// `b_{i,1} = i * C(d-1, i+1)`.
pub fn expected_rank2_betti(d: usize) -> BettiTable {
    assert!(d >= 3, "a rank-2 arrangement with an OT relation has at least 3 lines");
    let mut t = BettiTable::new(d - 2, 1, FieldMode::Rational);
    t.probabilistic = false;
    t.set(0, 0, 1);
    for i in 1..=d - 2 {
        t.set(i, 1, i as u64 * binomial(d as u64 - 1, i as u64 + 1));
    }
    t
}

/// Degree-`m` monomials outside `<initial_gens>`, in descending grevlex order.
pub fn standard_monomials(initial_gens: &[Monomial], nvars: usize, m: u32) -> Vec<Monomial> {
    standard_monomials_of(initial_gens, nvars, m, MonomialOrder::Grevlex)
}

/// Betti table of `R/<gens>`, where `R` has `nvars` variables.
pub fn koszul_betti(gens: &[Poly], nvars: usize, opts: &BettiOptions) -> Result<BettiTable> {
    let order = MonomialOrder::Grevlex;
    let input_deg = gens.iter().map(Poly::degree).max().unwrap_or(1);
    match opts.field {
        FieldMode::Prime(p) => {
            check_prime(p)?;
            let fp: Vec<FpPoly> = gens.iter().map(|g| FpPoly::from_poly(g, order, p)).collect::<Result<_>>()?;
            let gb = fp_buchberger(nvars, &fp, order, p, DEFAULT_MAX_PAIRS)?;
            let top = gb.gens.iter().map(FpPoly::degree).max().unwrap_or(0).max(input_deg);
            fill_table(gb, nvars, top as usize, opts)
        }
        FieldMode::Rational => {
            let gb = buchberger(nvars, gens, order)?;
            let top = gb.gens().iter().map(Poly::degree).max().unwrap_or(0).max(input_deg);
            fill_table(gb, nvars, top as usize, opts)
        }
    }
}

fn fill_table<Q: Quotient>(ring: Q, nvars: usize, top_deg: usize, opts: &BettiOptions) -> Result<BettiTable> {
    if ring.leads().iter().any(Monomial::is_one) {
        return Err(Error::Precondition("the ideal is the whole ring".into()));
    }
    let max_i = opts.max_i.unwrap_or(nvars);
    let max_j = opts.max_j.unwrap_or(2 * top_deg.max(1));

    let (ring, cut) = if opts.cut { cut_regular_sequence(ring)? } else { (ring, 0) };
    let n = ring.nvars();
    let mut strands = Strands::new(&ring, opts.max_matrix_entries);

    let mut table = BettiTable::new(max_i, max_j, opts.field);
    table.cut = cut;
    for j in 0..=max_j {
        for i in 0..=max_i.min(n) {
            let m = i + j;
            let dim = binomial(n as u64, i as u64) as usize * strands.h(m - i);
            if dim == 0 {
                continue;
            }
            let r_out = strands.rank(i, m)?;
            let r_in = strands.rank(i + 1, m)?;
            table.set(i, j, (dim - r_out - r_in) as u64);
        }
    }
    Ok(table)
}

/// `R/I` presented by a reduced Gröbner basis over the coefficient field.
trait Quotient: Sized {
    type Coef: Clone;
    fn nvars(&self) -> usize;
    fn leads(&self) -> Vec<Monomial>;
    fn hilbert_series(&self) -> Result<HilbertSeries>;
    /// Basis of the image ideal under `y_k := sum_j combo[j] y_j`, with
    /// `y_k` dropped.
    fn substitute(&self, k: usize, combo: &[i64]) -> Result<Self>;
    fn reduce(&self, m: Monomial) -> Vec<(Monomial, Self::Coef)>;
    fn negate(&self, c: &Self::Coef) -> Self::Coef;
    fn rank(&self, rows: usize, columns: Vec<Vec<(usize, Self::Coef)>>) -> usize;
}

impl Quotient for GroebnerBasis {
    type Coef = Rational;

    fn nvars(&self) -> usize {
        GroebnerBasis::nvars(self)
    }

    fn leads(&self) -> Vec<Monomial> {
        self.initial_ideal()
    }

    fn hilbert_series(&self) -> Result<HilbertSeries> {
        GroebnerBasis::hilbert_series(self)
    }

    fn substitute(&self, k: usize, combo: &[i64]) -> Result<Self> {
        let combo: Vec<Rational> = combo.iter().map(|&c| Rational::from_int(c)).collect();
        let gens: Vec<Poly> = self.gens().iter().map(|g| g.substitute_and_drop(k, &combo)).collect();
        buchberger(self.nvars() - 1, &gens, self.order())
    }

    fn reduce(&self, m: Monomial) -> Vec<(Monomial, Rational)> {
        let p = Poly::monomial(self.nvars(), self.order(), m, Rational::one());
        self.normal_form(&p).terms().to_vec()
    }

    fn negate(&self, c: &Rational) -> Rational {
        -c
    }

    fn rank(&self, rows: usize, columns: Vec<Vec<(usize, Rational)>>) -> usize {
        let mut dense = vec![vec![Rational::zero(); rows]; columns.len()];
        for (c, col) in columns.into_iter().enumerate() {
            for (r, v) in col {
                dense[c][r] += &v;
            }
        }
        // transposed: rank is the same
        QMatrix::from_rows(rows, dense).rank()
    }
}

impl Quotient for FpBasis {
    type Coef = u64;

    fn nvars(&self) -> usize {
        self.nvars
    }

    fn leads(&self) -> Vec<Monomial> {
        FpBasis::leads(self)
    }

    fn hilbert_series(&self) -> Result<HilbertSeries> {
        FpBasis::hilbert_series(self)
    }

    fn substitute(&self, k: usize, combo: &[i64]) -> Result<Self> {
        let p = self.p;
        let combo: Vec<u64> = combo.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        let gens: Vec<FpPoly> = self.gens.iter().map(|g| g.substitute_and_drop(k, &combo, self.order, p)).collect();
        fp_buchberger(self.nvars - 1, &gens, self.order, p, DEFAULT_MAX_PAIRS)
    }

    fn reduce(&self, m: Monomial) -> Vec<(Monomial, u64)> {
        self.normal_form_of(m)
    }

    fn negate(&self, c: &u64) -> u64 {
        (self.p - c) % self.p
    }

    fn rank(&self, rows: usize, columns: Vec<Vec<(usize, u64)>>) -> usize {
        let p = self.p;
        let cols = columns.len();
        let mut dense = vec![0u64; rows * cols];
        for (c, col) in columns.iter().enumerate() {
            for &(r, v) in col {
                dense[c * rows + r] = (dense[c * rows + r] + v) % p;
            }
        }
        rank_dense_mod(cols, rows, dense, p)
    }
}

/// Certifies `y_k := sum_j c_j y_j` as a nonzerodivisor: the Hilbert
/// numerator of the cut ideal over `(1-t)^(n-1)` must equal that of the
/// ideal over `(1-t)^n`.
fn try_cut<Q: Quotient>(ring: &Q, k: usize, combo: &[i64], numerator: &[i64]) -> Result<Option<Q>> {
    let cut = ring.substitute(k, combo)?;
    let hs = cut.hilbert_series()?;
    Ok((hs.numerator == numerator).then_some(cut))
}

const RANDOM_CUT_ATTEMPTS: usize = 4;

/// Cuts by regular linear forms until `R/I` is Artinian or no candidate
/// certifies. Tries `y_k = 0` for each variable from the last, then a few
/// seeded random forms.
fn cut_regular_sequence<Q: Quotient>(mut ring: Q) -> Result<(Q, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut count = 0;
    'outer: loop {
        let hs = ring.hilbert_series()?;
        if hs.dimension() == 0 {
            break;
        }
        let n = ring.nvars();
        let zero = vec![0; n];
        for k in (0..n).rev() {
            if let Some(next) = try_cut(&ring, k, &zero, &hs.numerator)? {
                ring = next;
                count += 1;
                continue 'outer;
            }
        }
        for _ in 0..RANDOM_CUT_ATTEMPTS {
            let k = n - 1;
            let combo: Vec<i64> = (0..n).map(|j| if j == k { 0 } else { rng.random_range(-9..=9) }).collect();
            if let Some(next) = try_cut(&ring, k, &combo, &hs.numerator)? {
                ring = next;
                count += 1;
                continue 'outer;
            }
        }
        break;
    }
    Ok((ring, count))
}

/// Standard-monomial bases per degree and Koszul differential ranks.
struct Strands<'a, Q: Quotient> {
    ring: &'a Q,
    leads: Vec<Monomial>,
    max_entries: usize,
    bases: HashMap<usize, (Vec<Monomial>, HashMap<Monomial, usize>)>,
    normal_forms: HashMap<Monomial, Vec<(Monomial, Q::Coef)>>,
    ranks: HashMap<(usize, usize), usize>,
}

impl<'a, Q: Quotient> Strands<'a, Q> {
    fn new(ring: &'a Q, max_entries: usize) -> Self {
        let leads = ring.leads();
        Strands { ring, leads, max_entries, bases: HashMap::new(), normal_forms: HashMap::new(), ranks: HashMap::new() }
    }

    fn basis(&mut self, k: usize) -> &(Vec<Monomial>, HashMap<Monomial, usize>) {
        let (leads, n) = (&self.leads, self.ring.nvars());
        self.bases.entry(k).or_insert_with(|| {
            let b = standard_monomials(leads, n, k as u32);
            let idx = b.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            (b, idx)
        })
    }

    fn h(&mut self, k: usize) -> usize {
        self.basis(k).0.len()
    }

    fn normal_form(&mut self, m: Monomial) -> Vec<(Monomial, Q::Coef)> {
        let ring = self.ring;
        self.normal_forms.entry(m).or_insert_with(|| ring.reduce(m)).clone()
    }

    /// Rank of `d_i : Λ^i ⊗ (R/I)_{m-i} -> Λ^{i-1} ⊗ (R/I)_{m-i+1}`.
    fn rank(&mut self, i: usize, m: usize) -> Result<usize> {
        let n = self.ring.nvars();
        if i == 0 || i > n || m < i {
            return Ok(0);
        }
        if let Some(&r) = self.ranks.get(&(i, m)) {
            return Ok(r);
        }
        let src_deg = m - i;
        let src = self.basis(src_deg).0.clone();
        let tgt_len = self.h(src_deg + 1);
        let src_wedges = subsets_colex(n, i);
        let tgt_wedges = subsets_colex(n, i - 1);
        let rows = tgt_wedges.len() * tgt_len;
        let cols = src_wedges.len() * src.len();
        if rows == 0 || cols == 0 {
            self.ranks.insert((i, m), 0);
            return Ok(0);
        }
        if rows.saturating_mul(cols) > self.max_entries {
            return Err(Error::Resource { what: "Koszul strand matrix entries", limit: self.max_entries });
        }
        let wedge_index: HashMap<&Vec<usize>, usize> = tgt_wedges.iter().enumerate().map(|(k, s)| (s, k)).collect();

        // columns of the differential as sparse (row, value) lists
        let mut columns: Vec<Vec<(usize, Q::Coef)>> = Vec::with_capacity(cols);
        for s_set in &src_wedges {
            for mono in &src {
                let mut col = Vec::new();
                for (pos, &v) in s_set.iter().enumerate() {
                    let mut rest = s_set.clone();
                    rest.remove(pos);
                    let w = wedge_index[&rest];
                    for (t, c) in self.normal_form(*mono * Monomial::var(v)) {
                        let row = w * tgt_len + self.basis(src_deg + 1).1[&t];
                        col.push((row, if pos % 2 == 0 { c } else { self.ring.negate(&c) }));
                    }
                }
                columns.push(col);
            }
        }
        let r = self.ring.rank(rows, columns);
        self.ranks.insert((i, m), r);
        Ok(r)
    }
}

/// `k`-subsets of `0..n` in colex order.
fn subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}
