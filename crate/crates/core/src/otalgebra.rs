//! The Orlik-Terao ideal, relation spaces and the two 2-formality tests.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactlin::{rank_of_rows, QMatrix, Rational};
use crate::groebner::{
    binomial, buchberger_with, hilbert_series, linear_syzygies, BuchbergerConfig, GroebnerBasis, Monomial,
    MonomialOrder, Poly, MAX_VARS,
};
use crate::matroid::{circuits, Circuit};

/// `sum_j c_j prod_{l != j} y_{i_l}` in `nvars` variables.
pub fn boundary(indices: &[usize], weights: &[Rational], nvars: usize, order: MonomialOrder) -> Poly {
    assert_eq!(indices.len(), weights.len());
    assert!(indices.len() >= 2, "boundary needs at least two hyperplanes");
    Poly::from_terms(
        nvars,
        order,
        indices.iter().zip(weights).enumerate().map(|(j, (_, c))| {
            let rest: Vec<usize> = indices.iter().enumerate().filter(|(l, _)| *l != j).map(|(_, &i)| i).collect();
            (Monomial::squarefree(&rest), c.clone())
        }),
    )
}

/// Generators `f_Λ` of the Orlik-Terao ideal, one per circuit.
#[derive(Clone, Debug, Serialize)]
pub struct OtIdeal {
    pub nvars: usize,
    pub quadratic_only: bool,
    pub circuits: Vec<Circuit>,
    pub generators: Vec<Poly>,
}

impl OtIdeal {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner(&self, order: MonomialOrder, config: BuchbergerConfig) -> Result<GroebnerBasis> {
        buchberger_with(self.nvars, &self.generators, order, config)
    }
}

/// The full ideal `I`, or `I_2` when `quadratic_only`.
pub fn ot_ideal(a: &Arrangement, quadratic_only: bool) -> Result<OtIdeal> {
    ot_ideal_in(a, quadratic_only, MonomialOrder::Grevlex)
}

pub fn ot_ideal_in(a: &Arrangement, quadratic_only: bool, order: MonomialOrder) -> Result<OtIdeal> {
    if a.len() > MAX_VARS {
        return Err(Error::Resource { what: "ring variables", limit: MAX_VARS });
    }
    let cs = circuits(a, if quadratic_only { Some(3) } else { None });
    let cs: Vec<Circuit> = cs.into_iter().filter(|c| !quadratic_only || c.len() == 3).collect();
    let generators = cs.iter().map(|c| boundary(&c.indices, &c.weights, a.len(), order)).collect();
    Ok(OtIdeal { nvars: a.len(), quadratic_only, circuits: cs, generators })
}

/// Kernel of `K^d -> V^*, e_i -> alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationSpace {
    pub basis: Vec<Vec<Rational>>,
    pub dim: usize,
}

pub fn relation_space(a: &Arrangement) -> RelationSpace {
    let basis = a.coefficient_matrix().nullspace();
    RelationSpace { dim: basis.len(), basis }
}

/// Rank of the span of the 3-circuit relations, with those relations as
/// the rows of a `#3-circuits x d` matrix.
pub fn three_relation_rank(a: &Arrangement) -> (usize, QMatrix) {
    let rows: Vec<Vec<Rational>> =
        circuits(a, Some(3)).iter().filter(|c| c.len() == 3).map(|c| c.relation_vector(a.len())).collect();
    let m = QMatrix::from_rows(a.len(), rows);
    (m.rank(), m)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormalityMethod {
    Direct,
    Codim,
    #[default]
    Both,
}

impl std::str::FromStr for FormalityMethod {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "direct" => Ok(FormalityMethod::Direct),
            "codim" => Ok(FormalityMethod::Codim),
            "both" => Ok(FormalityMethod::Both),
            _ => Err(format!("unknown method `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalityReport {
    pub d: usize,
    pub r: usize,
    pub dim_f: usize,
    pub three_rank: Option<usize>,
    pub codim_i2: Option<usize>,
    pub verdict_direct: Option<bool>,
    pub verdict_codim: Option<bool>,
    pub two_formal: bool,
}

impl FormalityReport {
    /// One-line summary, e.g.
    /// `2-formal: yes (three-rank 6 = d−n 6; codim I2 = 6)`.
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some(t) = self.three_rank {
            let rel = if t == self.dim_f { "=" } else { "<" };
            parts.push(format!("three-rank {t} {rel} d−n {}", self.dim_f));
        }
        if let Some(c) = self.codim_i2 {
            parts.push(format!("codim I2 = {c}"));
        }
        format!("2-formal: {} ({})", if self.two_formal { "yes" } else { "no" }, parts.join("; "))
    }
}

pub fn formality(a: &Arrangement, method: FormalityMethod) -> Result<FormalityReport> {
    formality_with(a, method, BuchbergerConfig::default())
}

pub fn formality_with(a: &Arrangement, method: FormalityMethod, config: BuchbergerConfig) -> Result<FormalityReport> {
    let (d, r) = (a.len(), a.rank());
    let dim_f = d - r;
    let three_rank = match method {
        FormalityMethod::Codim => None,
        _ => Some(three_relation_rank(a).0),
    };
    let codim_i2 = match method {
        FormalityMethod::Direct => None,
        _ => Some(codim_of(&ot_ideal(a, true)?, config)?),
    };
    let verdict_direct = three_rank.map(|t| t == dim_f);
    let verdict_codim = codim_i2.map(|c| c == dim_f);
    if let (Some(x), Some(y)) = (verdict_direct, verdict_codim) {
        if x != y {
            return Err(Error::Invariant(format!(
                "formality verdicts disagree: three-rank {} vs codim I2 {} (d−r = {dim_f})",
                three_rank.unwrap(),
                codim_i2.unwrap()
            )));
        }
    }
    let two_formal = verdict_direct.or(verdict_codim).unwrap_or(false);
    Ok(FormalityReport { d, r, dim_f, three_rank, codim_i2, verdict_direct, verdict_codim, two_formal })
}

/// Codimension of the ideal; zero for an empty generating set.
pub fn codim_of(ideal: &OtIdeal, config: BuchbergerConfig) -> Result<usize> {
    if ideal.is_empty() {
        return Ok(0);
    }
    let gb = ideal.groebner(MonomialOrder::Grevlex, config)?;
    Ok(gb.hilbert_series()?.codimension())
}

/// Local relations of one rank-2 flat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationBlock {
    pub flat: Vec<usize>,
    pub vectors: Vec<Vec<Rational>>,
}

/// The map from the direct sum of local relation spaces into `F(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationMap {
    pub blocks: Vec<RelationBlock>,
    pub domain_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub surjective: bool,
}

pub fn relation_map(a: &Arrangement) -> Result<RelationMap> {
    let lattice = a.lattice()?;
    let m = a.coefficient_matrix();
    let mut blocks = Vec::new();
    for x in lattice.flats_of_rank(2).iter().filter(|x| x.hyperplanes.len() >= 3) {
        let h = &x.hyperplanes;
        let vectors = (2..h.len())
            .map(|k| {
                let idx = [h[0], h[1], h[k]];
                let w = m.select_columns(&idx).nullspace().pop().expect("three hyperplanes in a rank-2 flat are dependent");
                let mut v = vec![Rational::zero(); a.len()];
                for (i, c) in idx.iter().zip(w) {
                    v[*i] = c;
                }
                v
            })
            .collect();
        blocks.push(RelationBlock { flat: h.clone(), vectors });
    }
    let rows: Vec<Vec<Rational>> = blocks.iter().flat_map(|b| b.vectors.iter().cloned()).collect();
    let domain_dim = rows.len();
    let rank = rank_of_rows(a.len(), &rows);
    Ok(RelationMap { blocks, domain_dim, rank, kernel_dim: domain_dim - rank, surjective: rank == a.len() - a.rank() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CiReport {
    pub b2: u64,
    pub threshold: u64,
    pub is_ci: bool,
}

/// For a 2-formal arrangement, `I_2` is a complete intersection iff
/// `b_2 = C(d,2) - d + r`.
pub fn ci_criterion(a: &Arrangement) -> Result<CiReport> {
    let (d, r) = (a.len(), a.rank());
    if three_relation_rank(a).0 != d - r {
        return Err(Error::Precondition("the complete-intersection criterion needs a 2-formal arrangement".into()));
    }
    let b2 = a.lattice()?.poincare().b(2);
    let threshold = (binomial(d as u64, 2) + r as u64).saturating_sub(d as u64);
    Ok(CiReport { b2, threshold, is_ci: b2 == threshold })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AotReport {
    pub aot: Vec<i64>,
    pub poincare: Vec<i64>,
    pub agrees: bool,
}

/// Hilbert function of `R / (I + <y_i^2>)` against the Betti numbers of
/// the arrangement, degrees `0..=max_deg`.
pub fn aot_hilbert_check(a: &Arrangement, max_deg: usize) -> Result<AotReport> {
    let ideal = ot_ideal(a, false)?;
    let order = MonomialOrder::Grevlex;
    let mut gens = ideal.generators.clone();
    gens.extend((0..a.len()).map(|i| Poly::monomial(a.len(), order, Monomial::var(i) * Monomial::var(i), Rational::one())));
    let gb = buchberger_with(a.len(), &gens, order, BuchbergerConfig::default())?;
    let hs = gb.hilbert_series()?;
    let aot: Vec<i64> = (0..=max_deg).map(|k| hs.hilbert_function(k)).collect();
    let p = a.lattice()?.poincare();
    let poincare: Vec<i64> = (0..=max_deg).map(|k| p.b(k) as i64).collect();
    Ok(AotReport { agrees: aot == poincare, aot, poincare })
}

const SAMPLE_RANGE: i64 = 1_000_000;
const MAX_REJECTIONS: usize = 1000;

/// Evaluates every generator at `(1/alpha_1(q), ..., 1/alpha_d(q))` for
/// `trials` seeded random integer points `q` off the arrangement.
pub fn phi_vanishing_check(a: &Arrangement, ideal: &OtIdeal, trials: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let q = off_hyperplane_point(a, &mut rng)?;
        if !vanishes_at(a, ideal, &q) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn vanishes_at(a: &Arrangement, ideal: &OtIdeal, q: &[Rational]) -> bool {
    let image: Vec<Rational> = a.forms().iter().map(|f| f.eval(q).recip()).collect();
    ideal.generators.iter().all(|f| f.eval(&image).is_zero())
}

fn off_hyperplane_point(a: &Arrangement, rng: &mut impl Rng) -> Result<Vec<Rational>> {
    for _ in 0..MAX_REJECTIONS {
        let q: Vec<Rational> =
            (0..a.ambient_dim()).map(|_| Rational::from_int(rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE))).collect();
        if a.forms().iter().all(|f| !f.eval(&q).is_zero()) {
            return Ok(q);
        }
    }
    Err(Error::Resource { what: "off-hyperplane sampling attempts", limit: MAX_REJECTIONS })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum SyzygyInstance {
    /// The supporting relations come from pairwise distinct flats; records
    /// whether they are linearly dependent.
    Checked { support: Vec<usize>, rank: usize, dependent: bool },
    Skipped { support: Vec<usize>, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyImplicationReport {
    pub quadrics: usize,
    pub syzygies: usize,
    pub instances: Vec<SyzygyInstance>,
    pub all_pass: bool,
}

/// Checks, for each basis linear syzygy among the quadratic generators,
/// that relations from distinct flats occurring in it are dependent.
pub fn syzygy_implication_check(a: &Arrangement) -> Result<SyzygyImplicationReport> {
    let ideal = ot_ideal(a, true)?;
    let syz = linear_syzygies(&ideal.generators, a.len())?;
    let instances: Vec<SyzygyInstance> =
        syz.basis.iter().map(|s| syzygy_instance(a, &ideal.circuits, s)).collect();
    let all_pass = instances.iter().all(|i| !matches!(i, SyzygyInstance::Checked { dependent: false, .. }));
    Ok(SyzygyImplicationReport { quadrics: ideal.len(), syzygies: syz.dim(), instances, all_pass })
}

/// Examines one syzygy `(L_i)` on the boundaries of the 3-circuits `cs`.
pub fn syzygy_instance(a: &Arrangement, cs: &[Circuit], syzygy: &[Poly]) -> SyzygyInstance {
    let support: Vec<usize> = syzygy.iter().enumerate().filter(|(_, l)| !l.is_zero()).map(|(i, _)| i).collect();
    let flats: BTreeSet<Vec<usize>> = support.iter().map(|&i| a.closure(&cs[i].indices)).collect();
    if support.len() < 2 {
        return SyzygyInstance::Skipped { support, reason: "fewer than two nonzero entries".into() };
    }
    if flats.len() != support.len() {
        return SyzygyInstance::Skipped { support, reason: "relations share a flat".into() };
    }
    let rows: Vec<Vec<Rational>> = support.iter().map(|&i| cs[i].relation_vector(a.len())).collect();
    let rank = rank_of_rows(a.len(), &rows);
    SyzygyInstance::Checked { dependent: rank < support.len(), rank, support }
}

/// Number of minimal generators of the ideal in each degree, computed by
/// comparing the degree-`k` part of the ideal with what lower degrees
/// generate.
#[allow(clippy::needless_range_loop)]
pub fn minimal_generator_degrees(ideal: &OtIdeal) -> Result<Vec<usize>> {
    let n = ideal.nvars;
    let order = MonomialOrder::Grevlex;
    let max_deg = ideal.generators.iter().map(Poly::degree).max().unwrap_or(0) as usize;
    let mut counts = vec![0usize; max_deg + 1];
    let mut lower: Vec<Poly> = Vec::new();
    for k in 2..=max_deg {
        let here: Vec<Poly> = ideal.generators.iter().filter(|f| f.degree() as usize == k).cloned().collect();
        if here.is_empty() {
            continue;
        }
        let gb = buchberger_with(n, &lower, order, BuchbergerConfig::default())?;
        // independent modulo the lower-degree ideal: reduce, then rank
        let reduced: Vec<Poly> = here.iter().map(|f| gb.normal_form(f)).collect();
        counts[k] = poly_rank(&reduced);
        lower.extend(here);
    }
    Ok(counts)
}

/// Rank of homogeneous polynomials of one degree as coefficient vectors.
fn poly_rank(polys: &[Poly]) -> usize {
    let monos: Vec<Monomial> =
        polys.iter().flat_map(|f| f.terms().iter().map(|(m, _)| *m)).collect::<BTreeSet<_>>().into_iter().collect();
    let rows: Vec<Vec<Rational>> = polys.iter().map(|f| monos.iter().map(|m| f.coefficient(m)).collect()).collect();
    rank_of_rows(monos.len(), &rows)
}

/// Hilbert-series shortcut used by tests and the acceptance suite:
/// `(codimension, degree)` of the ideal.
pub fn codim_degree(ideal: &OtIdeal) -> Result<(usize, i64)> {
    if ideal.is_empty() {
        return Ok((0, 1));
    }
    let gb = ideal.groebner(MonomialOrder::Grevlex, BuchbergerConfig::default())?;
    let hs = hilbert_series(&gb.initial_ideal(), ideal.nvars)?;
    Ok((hs.codimension(), hs.degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::groebner::ideal_equal;
    use crate::matroid::broken_circuits;

    const G: MonomialOrder = MonomialOrder::Grevlex;

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    #[test]
    fn boundary_examples() {
        let f = boundary(&[0, 1, 2, 3], &[q(1), q(1), q(1), q(-1)], 4, G);
        assert_eq!(f, Poly::parse("y2*y3*y4 + y1*y3*y4 + y1*y2*y4 - y1*y2*y3", 4, G).unwrap());
        let g = boundary(&[0, 1, 2], &[q(2), q(3), q(5)], 3, G);
        assert_eq!(g, Poly::parse("2*y2*y3 + 3*y1*y3 + 5*y1*y2", 3, G).unwrap());
        assert_eq!(boundary(&[0, 1], &[q(1), q(-1)], 2, G), Poly::parse("y2 - y1", 2, G).unwrap());
    }

    #[test]
    fn generator_counts() {
        let ex13 = corpus::arrangement("ex13").unwrap();
        assert_eq!(ot_ideal(&ex13, false).unwrap().len(), 1);
        assert_eq!(ot_ideal(&ex13, true).unwrap().len(), 0);
        assert_eq!(ot_ideal(&corpus::arrangement("nonfano").unwrap(), true).unwrap().len(), 6);
        assert_eq!(ot_ideal(&corpus::arrangement("yuz_a1").unwrap(), true).unwrap().len(), 6);
        for a in corpus::arrangements() {
            for f in &ot_ideal(&a, false).unwrap().generators {
                assert!(f.is_homogeneous());
            }
        }
    }

    #[test]
    fn relation_spaces() {
        let ex13 = corpus::arrangement("ex13").unwrap();
        assert_eq!(relation_space(&ex13).basis, vec![vec![q(1), q(1), q(1), q(-1)]]);
        assert_eq!(relation_space(&corpus::arrangement("boolean3").unwrap()).dim, 0);
        assert_eq!(relation_space(&corpus::arrangement("yuz_a1").unwrap()).dim, 6);
        assert_eq!(three_relation_rank(&ex13).0, 0);
        assert_eq!(three_relation_rank(&corpus::graph_arrangement("k4").unwrap()).0, 3);
        assert!(three_relation_rank(&corpus::arrangement("yuz_a2").unwrap()).0 < 6);
    }

    #[test]
    fn formality_examples() {
        let r = formality(&corpus::arrangement("yuz_a1").unwrap(), FormalityMethod::Both).unwrap();
        assert!(r.two_formal);
        assert_eq!(r.codim_i2, Some(6));
        assert_eq!(r.summary(), "2-formal: yes (three-rank 6 = d−n 6; codim I2 = 6)");
        let r = formality(&corpus::arrangement("yuz_a2").unwrap(), FormalityMethod::Both).unwrap();
        assert!(!r.two_formal);
        assert!(r.codim_i2.unwrap() < 6);
        let r = formality(&corpus::graph_arrangement("egypt").unwrap(), FormalityMethod::Both).unwrap();
        assert!(r.two_formal);
        assert_eq!(r.codim_i2, Some(4));
        let r = formality(&corpus::arrangement("ex13").unwrap(), FormalityMethod::Codim).unwrap();
        assert_eq!((r.codim_i2, r.two_formal, r.three_rank), (Some(0), false, None));
    }

    #[test]
    fn both_methods_agree_on_corpus() {
        for a in corpus::arrangements() {
            let r = formality(&a, FormalityMethod::Both).unwrap();
            assert_eq!(r.verdict_direct, r.verdict_codim, "{:?}", a.name());
            assert!(r.three_rank.unwrap() <= r.dim_f);
        }
    }

    #[test]
    fn relation_maps() {
        let m = relation_map(&corpus::arrangement("ex13").unwrap()).unwrap();
        assert_eq!((m.domain_dim, m.rank, m.kernel_dim, m.surjective), (0, 0, 0, false));
        let m = relation_map(&corpus::graph_arrangement("k4").unwrap()).unwrap();
        assert_eq!((m.domain_dim, m.rank, m.kernel_dim), (4, 3, 1));
        let m = relation_map(&corpus::arrangement("nonfano").unwrap()).unwrap();
        assert_eq!((m.domain_dim, m.rank, m.kernel_dim, m.surjective), (6, 4, 2, true));
        for a in corpus::arrangements() {
            let m = relation_map(&a).unwrap();
            assert_eq!(m.rank, three_relation_rank(&a).0);
            let lattice = a.lattice().unwrap();
            for b in &m.blocks {
                let x = lattice.flats_of_rank(2).iter().find(|x| x.hyperplanes == b.flat).unwrap();
                assert_eq!(b.vectors.len() as i64, x.moebius - 1);
                assert_eq!(rank_of_rows(a.len(), &b.vectors), b.vectors.len());
            }
        }
    }

    #[test]
    fn ci_examples() {
        let r = ci_criterion(&corpus::graph_arrangement("egypt").unwrap()).unwrap();
        assert_eq!((r.b2, r.threshold, r.is_ci), (24, 24, true));
        let r = ci_criterion(&corpus::arrangement("nonfano").unwrap()).unwrap();
        assert_eq!((r.b2, r.threshold, r.is_ci), (15, 17, false));
        let r = ci_criterion(&corpus::arrangement("yuz_a1").unwrap()).unwrap();
        assert_eq!((r.b2, r.threshold, r.is_ci), (30, 30, true));
        assert!(matches!(ci_criterion(&corpus::arrangement("yuz_a2").unwrap()), Err(Error::Precondition(_))));
    }

    #[test]
    fn aot_examples() {
        let r = aot_hilbert_check(&corpus::arrangement("boolean3").unwrap(), 4).unwrap();
        assert_eq!(r.aot, vec![1, 3, 3, 1, 0]);
        assert!(r.agrees);
        let r = aot_hilbert_check(&corpus::arrangement("ex13").unwrap(), 3).unwrap();
        assert_eq!(r.aot, vec![1, 4, 6, 3]);
        let r = aot_hilbert_check(&corpus::arrangement("nonfano").unwrap(), 3).unwrap();
        assert_eq!(r.aot[2], 15);
        assert!(r.agrees);
    }

    #[test]
    fn phi_vanishing() {
        let a = corpus::arrangement("ex13").unwrap();
        let ideal = ot_ideal(&a, false).unwrap();
        assert!(vanishes_at(&a, &ideal, &[q(1), q(2), q(3)]));
        for a in corpus::arrangements() {
            assert!(phi_vanishing_check(&a, &ot_ideal(&a, false).unwrap(), 10, 7).unwrap());
        }
        // a perturbed generator must fail
        let mut bad = ot_ideal(&a, false).unwrap();
        bad.generators[0] = bad.generators[0].add(&Poly::parse("y1*y2*y3", 4, G).unwrap());
        assert!(!phi_vanishing_check(&a, &bad, 3, 1).unwrap());
    }

    #[test]
    fn broken_circuits_are_initial_ideal() {
        for a in corpus::arrangements() {
            let bc: BTreeSet<Monomial> =
                broken_circuits(&circuits(&a, None)).iter().map(|b| Monomial::squarefree(&b.indices)).collect();
            for order in [MonomialOrder::Lex, MonomialOrder::Grevlex] {
                let gb = ot_ideal_in(&a, false, order).unwrap().groebner(order, BuchbergerConfig::default()).unwrap();
                let init: BTreeSet<Monomial> = gb.initial_ideal().into_iter().collect();
                assert_eq!(init, bc, "{:?} {order:?}", a.name());
            }
        }
    }

    #[test]
    fn terao_identity_and_codimension() {
        for a in corpus::arrangements() {
            let (d, r) = (a.len(), a.rank());
            let gb = ot_ideal(&a, false).unwrap().groebner(G, BuchbergerConfig::default()).unwrap();
            let hs = gb.hilbert_series().unwrap();
            // (1-t)^{d-r} sum_k b_k t^k (1-t)^{r-k}
            let p = a.lattice().unwrap().poincare();
            let mut expected = vec![0i64; d + 1];
            for k in 0..=r {
                let e = d - k;
                for j in 0..=e {
                    let c = binomial(e as u64, j as u64) as i64 * if j % 2 == 0 { 1 } else { -1 };
                    expected[k + j] += p.b(k) as i64 * c;
                }
            }
            while expected.last() == Some(&0) {
                expected.pop();
            }
            assert_eq!(hs.numerator, expected, "{:?}", a.name());
            assert_eq!(hs.codimension(), d - r);
            // nondegenerate: no variable and no square in I
            for i in 0..d {
                let y = Poly::var(d, G, i);
                assert!(!gb.contains(&y));
                assert!(!gb.contains(&y.mul(&y)));
            }
        }
    }

    #[test]
    fn rank_two_degree() {
        for name in ["rank2_d4", "rank2_d5", "rank2_d6"] {
            let a = corpus::arrangement(name).unwrap();
            let (codim, deg) = codim_degree(&ot_ideal(&a, false).unwrap()).unwrap();
            assert_eq!((codim, deg), (a.len() - 2, a.len() as i64 - 1));
        }
    }

    #[test]
    fn ideal_equalities() {
        for (a, expect) in [
            (corpus::graph_arrangement("k4").unwrap(), true),
            (corpus::graph_arrangement("k5").unwrap(), true),
            (corpus::arrangement("rank2_d5").unwrap(), true),
            (corpus::arrangement("ex13").unwrap(), false),
            (corpus::arrangement("nonfano").unwrap(), false),
        ] {
            let full = ot_ideal(&a, false).unwrap();
            let quad = ot_ideal(&a, true).unwrap();
            assert_eq!(ideal_equal(a.len(), &full.generators, &quad.generators, G).unwrap(), expect, "{:?}", a.name());
        }
    }

    #[test]
    fn k4_syzygies() {
        let a = corpus::graph_arrangement("k4").unwrap();
        let p = |s: &str| Poly::parse(s, 6, G).unwrap();
        let fs = [
            p("y5*y6 + y4*y5 - y4*y6"),
            p("y3*y6 + y2*y3 - y2*y6"),
            p("y3*y5 + y1*y3 - y1*y5"),
            p("y2*y4 + y1*y2 - y1*y4"),
        ];
        let ideal = ot_ideal(&a, true).unwrap();
        for f in &fs {
            assert!(ideal.generators.iter().any(|g| g == f || g.neg() == *f), "{f} is not a generator");
        }
        let syz = linear_syzygies(&fs, 6).unwrap();
        assert_eq!(syz.dim(), 2);
        let first = [p("y1 - y2"), p("-y1 - y5"), p("y2 + y6"), p("-y6 + y5")];
        let second = [p("y2 - y3"), p("-y4 + y5"), p("y4 - y2"), p("-y5 + y3")];
        for s in [&first, &second] {
            let total = s.iter().zip(&fs).fold(Poly::zero(6, G), |acc, (l, f)| acc.add(&l.mul(f)));
            assert!(total.is_zero());
            assert!(syz.contains(s, 6));
        }
        // linear syzygy forces a dependent relation, for both syzygies
        let cs: Vec<Circuit> = fs
            .iter()
            .map(|f| ideal.circuits[ideal.generators.iter().position(|g| g == f || g.neg() == *f).unwrap()].clone())
            .collect();
        for s in [&first, &second] {
            match syzygy_instance(&a, &cs, s) {
                SyzygyInstance::Checked { rank, dependent, .. } => assert!(dependent && rank == 3),
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!(syzygy_implication_check(&a).unwrap().all_pass);
    }

    #[test]
    fn syzygy_implication_examples() {
        let r = syzygy_implication_check(&corpus::arrangement("rank2_d4").unwrap()).unwrap();
        assert_eq!(r.syzygies, 2);
        assert!(r.instances.iter().all(|i| matches!(i, SyzygyInstance::Skipped { .. })));
        let r = syzygy_implication_check(&corpus::arrangement("nonfano").unwrap()).unwrap();
        assert!(r.all_pass);
        assert!(r.instances.iter().any(|i| matches!(i, SyzygyInstance::Checked { .. })));
    }

    #[test]
    fn minimal_generators() {
        let counts = minimal_generator_degrees(&ot_ideal(&corpus::arrangement("nonfano").unwrap(), false).unwrap()).unwrap();
        assert_eq!(counts, vec![0, 0, 6, 1]);
        let counts = minimal_generator_degrees(&ot_ideal(&corpus::graph_arrangement("egypt").unwrap(), false).unwrap()).unwrap();
        assert_eq!(counts, vec![0, 0, 4, 1, 0]);
        let counts = minimal_generator_degrees(&ot_ideal(&corpus::arrangement("yuz_a1").unwrap(), false).unwrap()).unwrap();
        assert_eq!(&counts[..3], &[0, 0, 6]);
        assert_eq!(counts[3], 20);
    }
}
