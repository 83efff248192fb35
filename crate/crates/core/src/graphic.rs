//! Graphic arrangements: clique complexes, chordless cycles and chordality.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::{Arrangement, LinearForm};
use crate::error::{Error, Result};
use crate::exactlin::{QMatrix, Rational};
use crate::otalgebra::{formality_with, FormalityMethod, FormalityReport};
use crate::groebner::BuchbergerConfig;

/// A simple graph on vertices `1..=vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    vertices: usize,
    /// Sorted pairs `(u, v)` with `u < v`, 1-based.
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<u64>,
}

impl Graph {
    pub const MAX_VERTICES: usize = 64;

    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if vertices > Self::MAX_VERTICES {
            return Err(Error::Resource { what: "graph vertices", limit: Self::MAX_VERTICES });
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            check_edge(vertices, u, v).map_err(Error::Invalid)?;
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::Invalid(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(Self::from_set(vertices, set))
    }

    fn from_set(vertices: usize, set: BTreeSet<(usize, usize)>) -> Graph {
        let mut adj = vec![0u64; vertices];
        for &(u, v) in &set {
            adj[u - 1] |= 1 << (v - 1);
            adj[v - 1] |= 1 << (u - 1);
        }
        Graph { vertices, edges: set.into_iter().collect(), adj }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Adjacency test on 0-based vertices.
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// 0-based neighbours of 0-based `u`.
    fn neighbours(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices).filter(move |&v| self.adjacent(u, v))
    }

    pub fn components(&self) -> usize {
        let mut seen = 0u64;
        let mut count = 0;
        for s in 0..self.vertices {
            if seen >> s & 1 == 1 {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen |= 1 << s;
            while let Some(u) = stack.pop() {
                for v in self.neighbours(u) {
                    if seen >> v & 1 == 0 {
                        seen |= 1 << v;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    pub fn to_graph_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.vertices);
        for (u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

fn check_edge(vertices: usize, u: usize, v: usize) -> std::result::Result<(), String> {
    if u == v {
        return Err(format!("loop at vertex {u}"));
    }
    for x in [u, v] {
        if x == 0 || x > vertices {
            return Err(format!("vertex {x} outside 1..{vertices}"));
        }
    }
    Ok(())
}

/// Parses the `.graph` format: `vertices <n>`, then one `u v` per line.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut vertices = None;
    let mut set = BTreeSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        if words[0] == "name" {
            continue;
        }
        if words[0] == "vertices" {
            if vertices.is_some() {
                return Err(Error::parse(line_no, "repeated `vertices` line"));
            }
            let n: usize = match words.as_slice() {
                [_, n] => n.parse().map_err(|_| Error::parse(line_no, format!("bad vertex count `{n}`")))?,
                _ => return Err(Error::parse(line_no, "expected `vertices <n>`")),
            };
            if n > Graph::MAX_VERTICES {
                return Err(Error::parse(line_no, format!("at most {} vertices", Graph::MAX_VERTICES)));
            }
            vertices = Some(n);
            continue;
        }
        let n = vertices.ok_or_else(|| Error::parse(line_no, "edge before `vertices` line"))?;
        let (u, v) = match words.as_slice() {
            [u, v] => (
                u.parse::<usize>().map_err(|_| Error::parse(line_no, format!("bad vertex `{u}`")))?,
                v.parse::<usize>().map_err(|_| Error::parse(line_no, format!("bad vertex `{v}`")))?,
            ),
            _ => return Err(Error::parse(line_no, "expected an edge `u v`")),
        };
        check_edge(n, u, v).map_err(|m| Error::parse(line_no, m))?;
        if !set.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(line_no, format!("duplicate edge {u} {v}")));
        }
    }
    let n = vertices.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing `vertices` line"))?;
    Ok(Graph::from_set(n, set))
}

/// One hyperplane `z_u - z_v` per edge, in edge order.
pub fn graph_to_arrangement(g: &Graph) -> Result<Arrangement> {
    let forms = g
        .edges
        .iter()
        .map(|&(u, v)| {
            let mut c = vec![Rational::zero(); g.vertices];
            c[u - 1] = Rational::one();
            c[v - 1] = Rational::from_int(-1);
            LinearForm(c)
        })
        .collect();
    Arrangement::new(None, g.vertices, forms)
}

/// All induced cycles of length at least 3, as 1-based vertex sequences
/// starting at their smallest vertex with the second entry smaller than
/// the last.
pub fn chordless_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        let next: Vec<usize> = g.neighbours(last).filter(|&w| w > s && !path.contains(&w)).collect();
        for w in next {
            // no chord from w back to the interior of the path
            if path[1..path.len() - 1].iter().any(|&x| g.adjacent(x, w)) {
                continue;
            }
            if g.adjacent(s, w) {
                if path.len() >= 2 && path[1] < w {
                    let mut c: Vec<usize> = path.iter().map(|x| x + 1).collect();
                    c.push(w + 1);
                    out.push(c);
                }
            } else {
                path.push(w);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.vertices {
        for v1 in g.neighbours(s).filter(|&v| v > s) {
            extend(g, &mut vec![s, v1], &mut out);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All cliques, grouped by size: `result[k]` holds the `(k+1)`-cliques as
/// sorted 0-based vertex lists.
pub fn cliques(g: &Graph) -> Vec<Vec<Vec<usize>>> {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..g.vertices).map(|v| vec![v]).collect()];
    loop {
        let next: Vec<Vec<usize>> = levels
            .last()
            .unwrap()
            .iter()
            .flat_map(|c| {
                let last = *c.last().unwrap();
                (last + 1..g.vertices).filter(|&w| c.iter().all(|&x| g.adjacent(x, w))).map(move |w| {
                    let mut e = c.clone();
                    e.push(w);
                    e
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    if g.vertices == 0 {
        levels.clear();
    }
    levels
}

/// `κ_1, ..., κ_max_i`, where `κ_i` counts the `(i+1)`-cliques.
pub fn kappa_counts(g: &Graph, max_i: usize) -> Vec<usize> {
    let cl = cliques(g);
    (1..=max_i).map(|i| cl.get(i).map_or(0, Vec::len)).collect()
}

/// Reduced rational homology `dim H~_k` of the clique complex.
pub fn clique_homology(g: &Graph, k: usize) -> usize {
    let cl = cliques(g);
    let faces = |dim: isize| -> usize {
        match dim {
            -1 => 1,
            d if d < 0 => 0,
            d => cl.get(d as usize).map_or(0, Vec::len),
        }
    };
    let k = k as isize;
    faces(k) - boundary_rank(&cl, k) - boundary_rank(&cl, k + 1)
}

/// Rank of the boundary map from `dim`-faces to `(dim-1)`-faces; the
/// 0-faces map to the empty face.
fn boundary_rank(cl: &[Vec<Vec<usize>>], dim: isize) -> usize {
    if dim < 0 || cl.get(dim as usize).is_none_or(Vec::is_empty) {
        return 0;
    }
    let dim = dim as usize;
    if dim == 0 {
        return 1;
    }
    let rows = &cl[dim - 1];
    let index: std::collections::HashMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = QMatrix::zeros(rows.len(), cl[dim].len());
    let mut entries = vec![vec![Rational::zero(); cl[dim].len()]; rows.len()];
    for (j, face) in cl[dim].iter().enumerate() {
        for pos in 0..face.len() {
            let mut sub = face.clone();
            sub.remove(pos);
            entries[index[&sub]][j] = Rational::from_int(if pos % 2 == 0 { 1 } else { -1 });
        }
    }
    if !rows.is_empty() {
        m = QMatrix::from_rows(cl[dim].len(), entries);
    }
    m.rank()
}

/// Chordality by maximum cardinality search and a perfect elimination
/// order check.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.vertices;
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !numbered[v]).max_by_key(|&v| (weight[v], std::cmp::Reverse(v))).unwrap();
        numbered[v] = true;
        order.push(v);
        for w in g.neighbours(v) {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    // reverse of the search order is a perfect elimination order iff chordal
    let pos: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    for &v in &order {
        // earlier-numbered neighbours must form a clique
        let earlier: Vec<usize> = g.neighbours(v).filter(|&w| pos[w] < pos[v]).collect();
        if let Some(&parent) = earlier.iter().max_by_key(|&&w| pos[w]) {
            if earlier.iter().any(|&w| w != parent && !g.adjacent(w, parent)) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphicFormalityReport {
    pub h1: usize,
    pub verdict_h1: bool,
    pub arrangement: FormalityReport,
    pub two_formal: bool,
}

/// 2-formality from `H_1` of the clique complex, cross-checked against the
/// arrangement-level tests.
pub fn graphic_formality(g: &Graph) -> Result<GraphicFormalityReport> {
    graphic_formality_with(g, FormalityMethod::Both, BuchbergerConfig::default())
}

pub fn graphic_formality_with(g: &Graph, method: FormalityMethod, config: BuchbergerConfig) -> Result<GraphicFormalityReport> {
    let h1 = clique_homology(g, 1);
    let verdict_h1 = h1 == 0;
    let arrangement = formality_with(&graph_to_arrangement(g)?, method, config)?;
    if arrangement.two_formal != verdict_h1 {
        return Err(Error::Invariant(format!(
            "clique homology gives H1 = {h1} but the arrangement test says 2-formal = {}",
            arrangement.two_formal
        )));
    }
    Ok(GraphicFormalityReport { h1, verdict_h1, arrangement, two_formal: verdict_h1 })
}

/// Random chordal graph: each new vertex is joined to a random clique of
/// the graph so far (the reverse insertion order is a perfect elimination
/// order).
pub fn random_chordal_graph(vertices: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = BTreeSet::new();
    let mut g = Graph::from_set(0, BTreeSet::new());
    for v in 1..vertices {
        let all = cliques(&Graph::from_set(v, set.clone()));
        let pool: Vec<&Vec<usize>> = all.iter().flatten().collect();
        let clique = pool[rng.random_range(0..pool.len())];
        for &u in clique {
            set.insert((u + 1, v + 1));
        }
        g = Graph::from_set(v + 1, set.clone());
    }
    if vertices <= 1 {
        g = Graph::from_set(vertices, set);
    }
    g
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph(vertices: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = BTreeSet::new();
    for u in 1..=vertices {
        for v in u + 1..=vertices {
            if rng.random_bool(p) {
                set.insert((u, v));
            }
        }
    }
    Graph::from_set(vertices, set)
}
