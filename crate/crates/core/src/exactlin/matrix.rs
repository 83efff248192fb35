use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp;
use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: QMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            entries.extend(r);
        }
        QMatrix { rows: n, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        QMatrix { rows, cols, entries: data.iter().map(|&x| Rational::from_int(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    /// Submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m[(r, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    /// Gauss-Jordan elimination to the unique reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.entries.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            if piv != rank {
                for c in 0..cols {
                    a.swap(piv * cols + c, rank * cols + c);
                }
            }
            let inv = a[rank * cols + col].recip();
            for c in col..cols {
                if !a[rank * cols + c].is_zero() {
                    a[rank * cols + c] = &a[rank * cols + c] * &inv;
                }
            }
            let pivot_row: Vec<(usize, Rational)> = (col..cols)
                .filter(|&c| !a[rank * cols + c].is_zero())
                .map(|c| (c, a[rank * cols + c].clone()))
                .collect();
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let f = a[r * cols + col].clone();
                if f.is_zero() {
                    continue;
                }
                for (c, v) in &pivot_row {
                    let idx = r * cols + c;
                    a[idx] = &a[idx] - &(&f * v);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref { matrix: QMatrix { rows, cols, entries: a }, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel, each vector normalized to a primitive
    /// integer vector whose first nonzero entry is positive.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&matrix[(r, free)];
                }
                primitive_integer(&v)
            })
            .collect()
    }

    /// Rank of the matrix reduced modulo the prime `p`.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize> {
        modp::check_prime(p)?;
        let data = self
            .entries
            .iter()
            .map(|x| x.to_mod(p).ok_or_else(|| Error::Invalid(format!("denominator of {x} vanishes mod {p}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(modp::rank_dense_mod(self.rows, self.cols, data, p))
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rescales a vector to a primitive integer vector with positive leading
/// entry. The zero vector is returned unchanged.
pub fn primitive_integer(v: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for x in v.iter().filter(|x| !x.is_zero()) {
        lcm = lcm.lcm(&x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let first_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x < &BigInt::zero());
    if first_negative {
        g = -g;
    }
    ints.into_iter().map(|x| Rational::from_bigint(x / &g)).collect()
}

/// Rank of a set of row vectors of common length.
pub fn rank_of_rows(cols: usize, rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    QMatrix::from_rows(cols, rows.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    /// Leibniz determinant; exponential but independent of elimination.
    fn det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return Rational::one();
        }
        let mut total = Rational::zero();
        for c in 0..n {
            if m[0][c].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rational>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
            let term = &m[0][c] * &det(&minor);
            total = if c % 2 == 0 { &total + &term } else { &total - &term };
        }
        total
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// Rank as the largest order of a nonvanishing minor.
    fn rank_by_minors(m: &QMatrix) -> usize {
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub: Vec<Vec<Rational>> = rs.iter().map(|&r| cs.iter().map(|&c| m[(r, c)].clone()).collect()).collect();
                    if !det(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn identity_rank() {
        let r = QMatrix::identity(3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn four_generic_forms() {
        // columns x1, x2, x3, x1+x2+x3
        let m = QMatrix::from_i64(3, 4, &[1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1]);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.nullspace(), vec![vec![q(1), q(1), q(1), q(-1)]]);
        assert_eq!(m.rank_mod_p(modp::DEFAULT_PRIME).unwrap(), 3);
    }

    #[test]
    fn zero_matrix() {
        let r = QMatrix::zeros(2, 2).rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn invertible_has_trivial_kernel() {
        let m = QMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        assert!(m.nullspace().is_empty());
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let m = QMatrix::from_i64(1, 3, &[1, 1, 1]);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(Rational::is_zero));
        }
        assert_eq!(rank_of_rows(3, &ker), 2);
    }

    #[test]
    fn rank_drop_mod_p() {
        let p = modp::DEFAULT_PRIME;
        let m = QMatrix::from_i64(1, 1, &[p as i64]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rank_mod_p(p).unwrap(), 0);
        assert_eq!(QMatrix::identity(3).rank_mod_p(p).unwrap(), 3);
        assert!(matches!(m.rank_mod_p(1_048_581), Err(Error::NotPrime(_))));
    }

    #[test]
    fn primitive_normalization() {
        let v = vec![Rational::new(-1, 2), Rational::new(1, 3), q(0)];
        assert_eq!(primitive_integer(&v), vec![q(3), q(-2), q(0)]);
    }

    #[test]
    fn rank_mod_random_prime_matches() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let primes: Vec<u64> = ((1u64 << 20)..(1u64 << 21)).filter(|&n| modp::is_prime(n)).step_by(997).collect();
        let mut equal = 0;
        let trials = 1000;
        for _ in 0..trials {
            let rows = rng.random_range(1..5);
            let cols = rng.random_range(1..5);
            let data: Vec<i64> = (0..rows * cols).map(|_| rng.random_range(-3..=3)).collect();
            let m = QMatrix::from_i64(rows, cols, &data);
            let p = primes[rng.random_range(0..primes.len())];
            let rp = m.rank_mod_p(p).unwrap();
            let r = m.rank();
            assert!(rp <= r);
            equal += usize::from(rp == r);
        }
        assert!(equal * 100 >= trials * 99, "{equal}/{trials}");
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..=4, r * c).prop_map(move |d| QMatrix::from_i64(r, c, &d))
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let once = m.rref();
            prop_assert_eq!(once.matrix.rref(), once.clone());
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            let r = m.rank();
            prop_assert_eq!(r, m.cols() - m.nullspace().len());
            prop_assert_eq!(r, m.rows() - m.transpose().nullspace().len());
            prop_assert_eq!(r, rank_by_minors(&m));
            for v in m.nullspace() {
                prop_assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
            }
        }
    }
}
