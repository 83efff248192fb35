//! Circuits of the linear matroid of an arrangement, with dependency weights.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::exactlin::Rational;

/// A minimal dependent set of hyperplanes and its dependency
/// `sum_t weights[t] * alpha_{indices[t]} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Circuit {
    pub indices: Vec<usize>,
    /// Primitive integer weights, first entry positive.
    pub weights: Vec<Rational>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The relation as a vector in `K^d`.
    pub fn relation_vector(&self, d: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); d];
        for (i, w) in self.indices.iter().zip(&self.weights) {
            v[*i] = w.clone();
        }
        v
    }

    /// Index set with its largest element removed.
    pub fn broken(&self) -> BrokenCircuit {
        BrokenCircuit { indices: self.indices[..self.indices.len() - 1].to_vec() }
    }
}

/// A circuit with its largest index removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BrokenCircuit {
    pub indices: Vec<usize>,
}

/// All circuits of size at most `max_size` (default `r + 1`, which is
/// exhaustive), sorted lexicographically by index set.
///
/// Independent sets are grown level by level; a `(k+1)`-set all of whose
/// `k`-subsets are independent is either independent or a circuit.
pub fn circuits(a: &Arrangement, max_size: Option<usize>) -> Vec<Circuit> {
    let d = a.len();
    let max_size = max_size.unwrap_or(a.rank() + 1).min(d);
    let matrix = a.coefficient_matrix();
    let mut out = Vec::new();
    let mut independent: HashSet<Vec<usize>> = (0..d).map(|i| vec![i]).collect();
    let mut level: Vec<Vec<usize>> = (0..d).map(|i| vec![i]).collect();
    for size in 2..=max_size {
        let mut next_level = Vec::new();
        let mut next_independent = HashSet::new();
        for base in &level {
            let last = *base.last().unwrap();
            for j in last + 1..d {
                let mut cand = base.clone();
                cand.push(j);
                // every size-1 subset independent
                let all_sub_independent = (0..size - 1).all(|skip| {
                    let sub: Vec<usize> = cand.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &x)| x).collect();
                    independent.contains(&sub)
                });
                if !all_sub_independent {
                    continue;
                }
                let sub = matrix.select_columns(&cand);
                let kernel = sub.nullspace();
                match kernel.len() {
                    0 => {
                        next_independent.insert(cand.clone());
                        next_level.push(cand);
                    }
                    1 => out.push(Circuit { indices: cand, weights: kernel.into_iter().next().unwrap() }),
                    _ => unreachable!("a set whose proper subsets are independent has nullity at most one"),
                }
            }
        }
        independent = next_independent;
        level = next_level;
    }
    out.sort_by(|x, y| x.indices.cmp(&y.indices));
    out
}

/// Broken circuits of `cs`, deduplicated and reduced to the
/// inclusion-minimal ones, in lexicographic order.
pub fn broken_circuits(cs: &[Circuit]) -> Vec<BrokenCircuit> {
    let all: BTreeSet<BrokenCircuit> = cs.iter().map(Circuit::broken).collect();
    let all: Vec<BrokenCircuit> = all.into_iter().collect();
    all.iter()
        .filter(|b| !all.iter().any(|c| c != *b && c.indices.iter().all(|x| b.indices.contains(x))))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_arrangement;

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    fn subsets(d: usize) -> impl Iterator<Item = Vec<usize>> {
        (1u32..(1 << d)).map(move |mask| (0..d).filter(|i| mask & (1 << i) != 0).collect())
    }

    /// Exhaustive oracle: dependent sets all of whose proper subsets are
    /// independent, by rank over all subsets.
    fn circuits_by_subsets(a: &Arrangement) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = subsets(a.len())
            .filter(|s| a.rank_of(s) < s.len())
            .filter(|s| (0..s.len()).all(|k| {
                let sub: Vec<usize> = s.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &x)| x).collect();
                a.rank_of(&sub) == sub.len()
            }))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn generic_four_planes() {
        let a = parse_arrangement("ambient 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1").unwrap();
        let cs = circuits(&a, None);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].indices, vec![0, 1, 2, 3]);
        assert_eq!(cs[0].weights, vec![q(1), q(1), q(1), q(-1)]);
        assert_eq!(broken_circuits(&cs), vec![BrokenCircuit { indices: vec![0, 1, 2] }]);
    }

    #[test]
    fn boolean_has_no_circuits() {
        let a = parse_arrangement("ambient 3\n1 0 0\n0 1 0\n0 0 1").unwrap();
        assert!(circuits(&a, None).is_empty());
        assert!(broken_circuits(&[]).is_empty());
    }

    #[test]
    fn four_points_on_a_line() {
        let a = parse_arrangement("ambient 2\n1 0\n0 1\n1 1\n1 2").unwrap();
        let cs = circuits(&a, None);
        let idx: Vec<_> = cs.iter().map(|c| c.indices.clone()).collect();
        assert_eq!(idx, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        let bc: Vec<_> = broken_circuits(&cs).into_iter().map(|b| b.indices).collect();
        assert_eq!(bc, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn weights_are_dependencies() {
        for text in [
            "ambient 3\n1 0 0\n0 1 0\n0 0 1\n1 1 0\n1 0 1\n0 1 1\n1 1 1",
            "ambient 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n2 1 1\n2 3 1\n2 3 4\n3 0 5\n3 4 5",
        ] {
            let a = parse_arrangement(text).unwrap();
            let cs = circuits(&a, None);
            let expected = circuits_by_subsets(&a);
            assert_eq!(cs.iter().map(|c| c.indices.clone()).collect::<Vec<_>>(), expected);
            let m = a.coefficient_matrix();
            for c in &cs {
                assert!(c.weights.iter().all(|w| !w.is_zero()));
                assert!(c.weights[0] > Rational::zero());
                let sub = m.select_columns(&c.indices);
                assert_eq!(sub.nullspace().len(), 1);
                assert!(sub.mul_vec(&c.weights).iter().all(Rational::is_zero));
            }
            for x in &cs {
                for y in &cs {
                    assert!(x == y || !x.indices.iter().all(|i| y.indices.contains(i)));
                }
            }
            // 3-circuits are the triples inside multiple points
            let l = a.lattice().unwrap();
            let expected3: usize = l.multiple_points().map(|f| {
                let m = f.hyperplanes.len();
                m * (m - 1) * (m - 2) / 6
            }).sum();
            assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), expected3);
        }
    }

    #[test]
    fn size_cap() {
        let a = parse_arrangement("ambient 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1").unwrap();
        assert!(circuits(&a, Some(3)).is_empty());
    }
}
