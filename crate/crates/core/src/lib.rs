//! Orlik-Terao algebras of hyperplane arrangements and 2-formality.

pub mod arrangement;
pub mod betti;
pub mod corpus;
pub mod error;
pub mod exactlin;
pub mod graphic;
pub mod groebner;
pub mod matroid;
pub mod otalgebra;

pub use betti::{koszul_betti, BettiOptions, BettiTable, FieldMode};
pub use arrangement::{parse_arrangement, Arrangement, Flat, Lattice, LinearForm, PoincarePoly};
pub use error::{Error, Result};
pub use exactlin::{QMatrix, Rational};
pub use graphic::{graph_to_arrangement, parse_graph, Graph};
pub use groebner::{GroebnerBasis, HilbertSeries, Monomial, MonomialOrder, Poly};
pub use matroid::{broken_circuits, circuits, BrokenCircuit, Circuit};
pub use otalgebra::{formality, FormalityMethod, FormalityReport, OtIdeal};
