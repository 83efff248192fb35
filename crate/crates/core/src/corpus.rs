//! Bundled example arrangements and graphs.

use crate::arrangement::{parse_arrangement, Arrangement};
use crate::error::{Error, Result};
use crate::graphic::{graph_to_arrangement, parse_graph, Graph};

pub const ARRANGEMENTS: [&str; 8] =
    ["ex13", "yuz_a1", "yuz_a2", "nonfano", "boolean3", "rank2_d4", "rank2_d5", "rank2_d6"];

pub const GRAPHS: [&str; 6] = ["egypt", "k4", "k5", "c4", "c5", "wheel4"];

/// Raw text of a bundled file, by stem and extension (`arr` or `graph`).
pub fn text(name: &str, ext: &str) -> Option<&'static str> {
    Some(match (name, ext) {
        ("ex13", "arr") => include_str!("../data/ex13.arr"),
        ("yuz_a1", "arr") => include_str!("../data/yuz_a1.arr"),
        ("yuz_a2", "arr") => include_str!("../data/yuz_a2.arr"),
        ("nonfano", "arr") => include_str!("../data/nonfano.arr"),
        ("boolean3", "arr") => include_str!("../data/boolean3.arr"),
        ("rank2_d4", "arr") => include_str!("../data/rank2_d4.arr"),
        ("rank2_d5", "arr") => include_str!("../data/rank2_d5.arr"),
        ("rank2_d6", "arr") => include_str!("../data/rank2_d6.arr"),
        ("egypt", "graph") => include_str!("../data/egypt.graph"),
        ("k4", "graph") => include_str!("../data/k4.graph"),
        ("k5", "graph") => include_str!("../data/k5.graph"),
        ("c4", "graph") => include_str!("../data/c4.graph"),
        ("c5", "graph") => include_str!("../data/c5.graph"),
        ("wheel4", "graph") => include_str!("../data/wheel4.graph"),
        _ => return None,
    })
}

fn missing(name: &str) -> Error {
    Error::Invalid(format!("no bundled example named `{name}`"))
}

pub fn arrangement(name: &str) -> Result<Arrangement> {
    parse_arrangement(text(name, "arr").ok_or_else(|| missing(name))?)
}

pub fn graph(name: &str) -> Result<Graph> {
    parse_graph(text(name, "graph").ok_or_else(|| missing(name))?)
}

/// The graphic arrangement of a bundled graph, named after it.
pub fn graph_arrangement(name: &str) -> Result<Arrangement> {
    Ok(graph_to_arrangement(&graph(name)?)?.with_name(name))
}

/// Every bundled arrangement, graphs included.
pub fn arrangements() -> Vec<Arrangement> {
    ARRANGEMENTS
        .iter()
        .map(|n| arrangement(n))
        .chain(GRAPHS.iter().map(|n| graph_arrangement(n)))
        .collect::<Result<_>>()
        .expect("bundled examples parse")
}
