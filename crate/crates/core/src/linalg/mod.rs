//! Exact linear algebra over the rationals and the integers.

pub mod echelon;
pub mod factor;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod sparse;
pub mod spectral;

pub use echelon::Echelon;
pub use matrix::{parse_rational, q, ExactMatrix};
pub use poly::IntPolynomial;
pub use roots::AlgebraicReal;
pub use spectral::{
    char_poly, eigenstructure, is_signed_permutation, jordan_growth_rate, spectral_radius,
    trace_power_sequence, trace_roots, EigenClass, EigenstructureReport,
};
pub use sparse::SparseMatrix;
