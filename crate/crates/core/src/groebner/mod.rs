//! Polynomials over the rationals, Gröbner bases, Hilbert series and
//! linear syzygies.

mod buchberger;
pub(crate) mod fp;
mod hilbert;
mod monomial;
mod poly;
mod syzygy;

pub use buchberger::{
    buchberger, buchberger_with, ideal_equal, s_poly, BuchbergerConfig, GroebnerBasis, DEFAULT_MAX_PAIRS,
};
pub use hilbert::{
    dimension_codimension, hilbert_series, hilbert_series_with, minimalize, render_poly, standard_monomials,
    HilbertSeries, DEFAULT_MAX_NODES,
};
pub(crate) use hilbert::binomial;
pub use monomial::{monomials_of_degree, Monomial, MonomialOrder, MAX_VARS};
pub use poly::Poly;
pub use syzygy::{linear_syzygies, LinearSyzygies};
