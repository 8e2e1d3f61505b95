//! Bound quiver algebras over the rationals and the dynamics of their Serre
//! functors: Cartan and Coxeter matrices, exact spectral radii, entropy and
//! polynomial entropy, Serre dimensions, Hochschild entropy tables and twisted
//! fractional Calabi-Yau detection.
//!
//! Paths compose left to right: `a*b` means "first `a`, then `b`". A right
//! module is a representation in which an arrow `a: i -> j` acts as a linear
//! map from the space at `i` to the space at `j`. Under this convention the
//! Cartan matrix has entries `c_ij = dim e_j A e_i` and its columns are the
//! dimension vectors of the indecomposable projectives `e_j A`.

pub mod algebra;
pub mod corpus;
pub mod derived;
pub mod dsl;
pub mod error;
pub mod ktheory;
pub mod linalg;
pub mod par;
pub mod pipeline;
pub mod report;

pub use error::{Error, Result};

/// Exact rational scalar used throughout.
pub type Q = num_rational::BigRational;
