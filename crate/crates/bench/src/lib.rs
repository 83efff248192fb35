//! Benchmark fixtures; see `benches/`.

use otformal_core::{corpus, Arrangement};

/// A bundled arrangement or graphic arrangement by name.
pub fn fixture(name: &str) -> Arrangement {
    corpus::arrangement(name).or_else(|_| corpus::graph_arrangement(name)).expect("bundled example")
}
