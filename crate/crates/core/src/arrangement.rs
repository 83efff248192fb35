//! Central hyperplane arrangements and their intersection lattices.
//!
//! Hyperplanes are indexed from 0 internally; everything rendered for humans
//! uses 1-based indices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{primitive_integer, QMatrix, Rational};

/// Default bound on the number of flats enumerated by [`Arrangement::lattice`].
pub const DEFAULT_FLAT_LIMIT: usize = 100_000;

/// A nonzero linear form, stored by its coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearForm(pub Vec<Rational>);

impl LinearForm {
    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    /// Value of the form at a point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.0.iter().zip(point).map(|(a, x)| a * x).sum()
    }

    fn normalized(&self) -> Vec<Rational> {
        primitive_integer(&self.0)
    }
}

/// A finite set of distinct hyperplanes through the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    name: Option<String>,
    ambient_dim: usize,
    forms: Vec<LinearForm>,
    rank: usize,
}

impl Arrangement {
    /// Validates and builds an arrangement. The empty arrangement is allowed
    /// here so that deletion and restriction are total.
    pub fn new(name: Option<String>, ambient_dim: usize, forms: Vec<LinearForm>) -> Result<Self> {
        let mut seen: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
        for (i, f) in forms.iter().enumerate() {
            if f.0.len() != ambient_dim {
                return Err(Error::Invalid(format!("H{} has {} coefficients, expected {ambient_dim}", i + 1, f.0.len())));
            }
            if f.is_zero() {
                return Err(Error::Invalid(format!("H{} is the zero form", i + 1)));
            }
            if let Some(j) = seen.insert(f.normalized(), i) {
                return Err(Error::Invalid(format!("H{} is proportional to H{}", i + 1, j + 1)));
            }
        }
        let rank = if forms.is_empty() { 0 } else { coefficient_matrix(ambient_dim, &forms).rank() };
        Ok(Arrangement { name, ambient_dim, forms, rank })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Ambient dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of hyperplanes `d`.
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Matroid rank `r` of the coefficient matrix.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn is_essential(&self) -> bool {
        self.rank == self.ambient_dim
    }

    /// The `n x d` matrix whose columns are the forms.
    pub fn coefficient_matrix(&self) -> QMatrix {
        coefficient_matrix(self.ambient_dim, &self.forms)
    }

    /// Rank of the subfamily `indices`.
    pub fn rank_of(&self, indices: &[usize]) -> usize {
        if indices.is_empty() {
            return 0;
        }
        let rows = indices.iter().map(|&i| self.forms[i].0.clone()).collect();
        QMatrix::from_rows(self.ambient_dim, rows).rank()
    }

    /// All hyperplanes containing the intersection of `indices`.
    pub fn closure(&self, indices: &[usize]) -> Vec<usize> {
        let span = Span::new(self.ambient_dim, indices.iter().map(|&i| &self.forms[i]));
        (0..self.len()).filter(|&j| span.contains(&self.forms[j])).collect()
    }

    /// Removes hyperplane `i`.
    pub fn deletion(&self, i: usize) -> Result<Arrangement> {
        self.check_index(i)?;
        let forms = self.forms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.clone()).collect();
        Arrangement::new(self.name.as_ref().map(|n| format!("{n} minus H{}", i + 1)), self.ambient_dim, forms)
    }

    /// Restricts to hyperplane `i`, expressing forms in a basis of `H_i`.
    pub fn restriction(&self, i: usize) -> Result<Restriction> {
        self.check_index(i)?;
        let basis = QMatrix::from_rows(self.ambient_dim, vec![self.forms[i].0.clone()]).nullspace();
        let mut forms: Vec<LinearForm> = Vec::new();
        let mut keys: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
        let mut collapse = vec![None; self.len()];
        for (j, f) in self.forms.iter().enumerate() {
            if j == i {
                continue;
            }
            let image = LinearForm(basis.iter().map(|v| f.eval(v)).collect());
            let key = image.normalized();
            let slot = *keys.entry(key).or_insert_with(|| {
                forms.push(image);
                forms.len() - 1
            });
            collapse[j] = Some(slot);
        }
        let arrangement = Arrangement::new(
            self.name.as_ref().map(|n| format!("{n} on H{}", i + 1)),
            self.ambient_dim - 1,
            forms,
        )?;
        Ok(Restriction { arrangement, collapse })
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::Invalid(format!("hyperplane index {} out of range 1..={}", i + 1, self.len())));
        }
        Ok(())
    }

    /// Enumerates the intersection lattice with the default flat limit.
    pub fn lattice(&self) -> Result<Lattice> {
        self.lattice_with_limit(DEFAULT_FLAT_LIMIT)
    }

    /// Enumerates every flat by closing flats of rank `k` under adding one
    /// hyperplane, then fills in the Möbius function by recursion.
    pub fn lattice_with_limit(&self, limit: usize) -> Result<Lattice> {
        let mut levels: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
        let mut count = 1;
        for _ in 0..self.rank {
            let prev = levels.last().unwrap();
            let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
            for flat in prev {
                let span = Span::new(self.ambient_dim, flat.iter().map(|&i| &self.forms[i]));
                let mut covered = vec![false; self.len()];
                for &i in flat {
                    covered[i] = true;
                }
                for j in 0..self.len() {
                    if covered[j] {
                        continue;
                    }
                    let mut bigger = span.clone();
                    bigger.push(&self.forms[j]);
                    let closed: Vec<usize> = (0..self.len()).filter(|&h| bigger.contains(&self.forms[h])).collect();
                    for &h in &closed {
                        covered[h] = true;
                    }
                    if next.insert(closed) {
                        count += 1;
                        if count > limit {
                            return Err(Error::Resource { what: "intersection lattice flats", limit });
                        }
                    }
                }
            }
            levels.push(next.into_iter().collect());
        }

        let mut flats: Vec<Vec<Flat>> = Vec::with_capacity(levels.len());
        for (rank, level) in levels.into_iter().enumerate() {
            let mut out = Vec::with_capacity(level.len());
            for indices in level {
                let mu = if rank == 0 {
                    1
                } else {
                    let below: i64 = flats
                        .iter()
                        .flatten()
                        .filter(|y: &&Flat| is_subset(&y.hyperplanes, &indices))
                        .map(|y| y.moebius)
                        .sum();
                    -below
                };
                out.push(Flat { hyperplanes: indices, rank, moebius: mu });
            }
            flats.push(out);
        }
        Ok(Lattice { flats })
    }

    /// Renders in the `.arr` text format.
    pub fn to_arr_text(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            writeln!(s, "name {n}").unwrap();
        }
        writeln!(s, "ambient {}", self.ambient_dim).unwrap();
        for f in &self.forms {
            let row: Vec<String> = f.0.iter().map(|x| x.to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }
}

/// Outcome of [`Arrangement::restriction`]: the restricted arrangement and,
/// for each original hyperplane other than the one restricted to, the index
/// of its image.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub arrangement: Arrangement,
    pub collapse: Vec<Option<usize>>,
}

fn coefficient_matrix(n: usize, forms: &[LinearForm]) -> QMatrix {
    QMatrix::from_rows(forms.len(), (0..n).map(|r| forms.iter().map(|f| f.0[r].clone()).collect()).collect())
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Incremental row space in reduced echelon form, used for closure tests.
#[derive(Clone)]
struct Span {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Span {
    fn new<'a>(_n: usize, forms: impl IntoIterator<Item = &'a LinearForm>) -> Self {
        let mut s = Span { rows: Vec::new() };
        for f in forms {
            s.push(f);
        }
        s
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    fn contains(&self, f: &LinearForm) -> bool {
        self.reduce(&f.0).iter().all(Rational::is_zero)
    }

    fn push(&mut self, f: &LinearForm) {
        let v = self.reduce(&f.0);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let inv = v[p].recip();
        let v: Vec<Rational> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        self.rows.push((p, v));
    }
}

/// An element of the intersection lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flat {
    /// Sorted indices of every hyperplane containing the flat.
    pub hyperplanes: Vec<usize>,
    /// Codimension of the flat.
    pub rank: usize,
    /// `mu(0, X)`.
    pub moebius: i64,
}

/// The intersection lattice, flats grouped by rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    pub flats: Vec<Vec<Flat>>,
}

impl Lattice {
    pub fn rank(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn flats_of_rank(&self, k: usize) -> &[Flat] {
        self.flats.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Flat> {
        self.flats.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.flats.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Rank-2 flats containing at least three hyperplanes.
    pub fn multiple_points(&self) -> impl Iterator<Item = &Flat> {
        self.flats_of_rank(2).iter().filter(|f| f.hyperplanes.len() >= 3)
    }

    /// `P(t) = sum |mu(X)| t^rank(X)`.
    pub fn poincare(&self) -> PoincarePoly {
        PoincarePoly(
            self.flats.iter().map(|level| level.iter().map(|f| f.moebius.unsigned_abs()).sum()).collect(),
        )
    }
}

/// Poincaré polynomial, coefficients `b_0..b_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincarePoly(pub Vec<u64>);

impl PoincarePoly {
    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    /// Coefficient of `t^k` (zero past the top).
    pub fn b(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// Returns `self + t * other`.
    pub fn plus_shifted(&self, other: &PoincarePoly) -> PoincarePoly {
        let len = self.0.len().max(other.0.len() + 1);
        PoincarePoly((0..len).map(|k| self.b(k) + if k == 0 { 0 } else { other.b(k - 1) }).collect())
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0i64, |acc, &b| acc * t + b as i64)
    }
}

impl std::fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, b)| **b != 0)
            .map(|(k, b)| match k {
                0 => b.to_string(),
                1 => format!("{b}t"),
                _ => format!("{b}t^{k}"),
            })
            .collect();
        write!(f, "{}", if terms.is_empty() { "0".to_string() } else { terms.join(" + ") })
    }
}

/// Parses the `.arr` format: optional `name <text>`, required `ambient <n>`,
/// then one line of `n` rationals per hyperplane. `#` starts a comment.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut name = None;
    let mut ambient: Option<usize> = None;
    let mut forms: Vec<LinearForm> = Vec::new();
    let mut keys: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
    let mut last_line = 0;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        last_line = lineno;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("name") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                if ambient.is_some() {
                    return Err(Error::parse(lineno, "`name` must precede `ambient`"));
                }
                name = Some(rest.trim().to_string());
                continue;
            }
        }
        if let Some(rest) = line.strip_prefix("ambient") {
            if ambient.is_some() {
                return Err(Error::parse(lineno, "duplicate `ambient` line"));
            }
            let n: usize = rest.trim().parse().map_err(|_| Error::parse(lineno, format!("bad ambient dimension `{}`", rest.trim())))?;
            if n == 0 {
                return Err(Error::parse(lineno, "ambient dimension must be positive"));
            }
            ambient = Some(n);
            continue;
        }
        let Some(n) = ambient else {
            return Err(Error::parse(lineno, "expected `ambient <n>` before the first hyperplane"));
        };
        let coeffs = line
            .split_whitespace()
            .map(|tok| tok.parse::<Rational>().map_err(|e| Error::parse(lineno, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != n {
            return Err(Error::parse(lineno, format!("expected {n} coefficients, found {}", coeffs.len())));
        }
        let form = LinearForm(coeffs);
        if form.is_zero() {
            return Err(Error::parse(lineno, "zero linear form"));
        }
        if let Some(j) = keys.insert(form.normalized(), forms.len()) {
            return Err(Error::parse(lineno, format!("form is proportional to hyperplane {}", j + 1)));
        }
        forms.push(form);
    }
    let Some(n) = ambient else {
        return Err(Error::parse(last_line.max(1), "missing `ambient <n>` line"));
    };
    if forms.is_empty() {
        return Err(Error::parse(last_line.max(1), "no hyperplanes"));
    }
    Arrangement::new(name, n, forms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(text: &str) -> Arrangement {
        parse_arrangement(text).unwrap()
    }

    const EX13: &str = "ambient 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1";
    const BOOL3: &str = "ambient 3\n1 0 0\n0 1 0\n0 0 1";
    const NONFANO: &str = "ambient 3\n1 0 0\n0 1 0\n0 0 1\n1 1 0\n1 0 1\n0 1 1\n1 1 1";

    fn census(l: &Lattice) -> Vec<usize> {
        l.flats.iter().map(Vec::len).collect()
    }

    #[test]
    fn parse_examples() {
        let a = arr(EX13);
        assert_eq!((a.len(), a.ambient_dim(), a.rank()), (4, 3, 3));
        let one = arr("ambient 3\n1 0 0");
        assert_eq!((one.len(), one.rank()), (1, 1));
        let named = arr("# comment\nname four lines\n\nambient 2\n1/2 -3 # trailing\n0 1");
        assert_eq!(named.name(), Some("four lines"));
        assert_eq!(named.forms()[0].0[0], Rational::new(1, 2));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let cases = [
            ("ambient 2\n1 0\n2 0", 3, "proportional"),
            ("ambient 2\n0 0", 2, "zero"),
            ("ambient 2\n1 x", 2, "malformed"),
            ("ambient 2\n1 0\n1 2 3", 3, "expected 2"),
            ("1 0", 1, "ambient"),
            ("ambient 2\n", 1, "no hyperplanes"),
        ];
        for (text, line, needle) in cases {
            match parse_arrangement(text) {
                Err(Error::Parse { line: l, message }) => {
                    assert_eq!(l, line, "{text}");
                    assert!(message.contains(needle), "{message}");
                }
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn boolean_lattice() {
        let l = arr(BOOL3).lattice().unwrap();
        assert_eq!(census(&l), vec![1, 3, 3, 1]);
        assert!(l.iter().all(|f| f.moebius.abs() == 1));
        assert_eq!(l.poincare().0, vec![1, 3, 3, 1]);
    }

    #[test]
    fn generic_four_planes() {
        let l = arr(EX13).lattice().unwrap();
        let rank2 = l.flats_of_rank(2);
        assert_eq!(rank2.len(), 6);
        assert!(rank2.iter().all(|f| f.hyperplanes.len() == 2 && f.moebius == 1));
        assert_eq!(l.flats_of_rank(3).len(), 1);
        assert_eq!(l.poincare().0, vec![1, 4, 6, 3]);
    }

    /// Brute-force census of rank-2 flats: group hyperplane pairs by the
    /// set of hyperplanes containing their intersection, computed by rank
    /// tests on triples only.
    fn rank2_census_by_triples(a: &Arrangement) -> BTreeMap<usize, usize> {
        let d = a.len();
        let mut flats: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..d {
            for j in i + 1..d {
                let mut members = vec![i, j];
                for k in 0..d {
                    if k != i && k != j && a.rank_of(&[i, j, k]) == 2 {
                        members.push(k);
                    }
                }
                members.sort();
                flats.insert(members);
            }
        }
        let mut by_size = BTreeMap::new();
        for f in flats {
            *by_size.entry(f.len()).or_insert(0) += 1;
        }
        by_size
    }

    #[test]
    fn non_fano_lattice() {
        let a = arr(NONFANO);
        let l = a.lattice().unwrap();
        let rank2 = l.flats_of_rank(2);
        let triple: Vec<_> = rank2.iter().filter(|f| f.hyperplanes.len() == 3).collect();
        let double: Vec<_> = rank2.iter().filter(|f| f.hyperplanes.len() == 2).collect();
        assert_eq!(triple.len(), 6);
        assert_eq!(double.len(), 3);
        assert!(triple.iter().all(|f| f.moebius == 2));
        assert!(double.iter().all(|f| f.moebius == 1));
        assert_eq!(rank2_census_by_triples(&a), BTreeMap::from([(2, 3), (3, 6)]));
        assert_eq!(l.poincare().b(2), 15);
    }

    #[test]
    fn deletion_examples() {
        let ex = arr(EX13);
        let del = ex.deletion(3).unwrap();
        assert_eq!(del.forms(), arr(BOOL3).forms());
        assert_eq!(arr(BOOL3).deletion(0).unwrap().rank(), 2);
        let nf = arr(NONFANO).deletion(6).unwrap();
        assert_eq!((nf.len(), nf.rank()), (6, 3));
        assert!(ex.deletion(4).is_err());
    }

    #[test]
    fn restriction_examples() {
        let res = arr(EX13).restriction(0).unwrap();
        let r = &res.arrangement;
        assert_eq!((r.ambient_dim(), r.len()), (2, 3));
        let expect = arr("ambient 2\n1 0\n0 1\n1 1");
        assert_eq!(r.forms(), expect.forms());
        let b = arr(BOOL3).restriction(0).unwrap().arrangement;
        assert_eq!(b.forms(), arr("ambient 2\n1 0\n0 1").forms());
        assert!(arr(BOOL3).restriction(3).is_err());
    }

    #[test]
    fn restriction_collapses_lines_through_a_point() {
        // x, y, x+y restricted to x=0: y and x+y both become y.
        let res = arr("ambient 2\n1 0\n0 1\n1 1").restriction(0).unwrap();
        assert_eq!(res.arrangement.len(), 1);
        assert_eq!(res.collapse, vec![None, Some(0), Some(0)]);
    }

    fn poincare(a: &Arrangement) -> PoincarePoly {
        a.lattice().unwrap().poincare()
    }

    #[test]
    fn deletion_restriction_recursion() {
        for text in [EX13, BOOL3, NONFANO, "ambient 2\n1 0\n0 1\n1 1\n1 2", "ambient 3\n1 0 0"] {
            let a = arr(text);
            for i in 0..a.len() {
                let lhs = poincare(&a);
                let rhs = poincare(&a.deletion(i).unwrap()).plus_shifted(&poincare(&a.restriction(i).unwrap().arrangement));
                assert_eq!(lhs.0, rhs.0[..lhs.0.len()].to_vec());
                assert!(rhs.0[lhs.0.len()..].iter().all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn lattice_structure() {
        for text in [EX13, BOOL3, NONFANO] {
            let a = arr(text);
            let l = a.lattice().unwrap();
            assert_eq!(l.flats_of_rank(0).len(), 1);
            assert_eq!(l.flats_of_rank(0)[0].moebius, 1);
            assert!(l.flats_of_rank(1).iter().all(|f| f.hyperplanes.len() == 1 && f.moebius == -1));
            for f in l.iter() {
                assert_eq!(a.closure(&f.hyperplanes), f.hyperplanes);
                assert_eq!(a.rank_of(&f.hyperplanes), f.rank);
                let sign = if f.rank % 2 == 0 { 1 } else { -1 };
                assert!(f.moebius * sign > 0);
            }
            let pairs: usize = l.flats_of_rank(2).iter().map(|f| f.hyperplanes.len() * (f.hyperplanes.len() - 1) / 2).sum();
            assert_eq!(pairs, a.len() * (a.len() - 1) / 2);
            let p = l.poincare();
            assert_eq!(p.b(0), 1);
            assert_eq!(p.b(1), a.len() as u64);
            // central arrangements: P(-1) = 0
            assert_eq!(p.eval(-1), 0);
        }
    }

    #[test]
    fn flat_limit() {
        let err = arr(NONFANO).lattice_with_limit(10).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
    }

    #[test]
    fn round_trip_text() {
        let a = arr("name nf\nambient 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1/2");
        assert_eq!(parse_arrangement(&a.to_arr_text()).unwrap(), a);
    }
}
