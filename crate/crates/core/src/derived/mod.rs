//! Computations in the bounded derived category: Nakayama and Serre functor
//! powers, Serre dimensions, entropy estimates, window tests, Calabi-Yau
//! confirmation and Hochschild tables.

pub mod bimodule;
pub mod complex;
pub mod cy;
pub mod entropy;
pub mod hochschild;
pub mod modules;
pub mod serre;
pub mod tensor;
pub mod window;

pub use bimodule::{enveloping_algebra, Enveloping};
pub use complex::{CohomologyProfile, ProjComplex};
pub use cy::{confirm_cy, CyVerdict};
pub use hochschild::{hh_entropy_estimate, hochschild_table, hochschild_table_dual, prop1_duality_check, DualityCheck, HhEntropy, HhRow, HhVariant, HochschildTable};
pub use entropy::{entropy_estimate, k_shortcut_terms, polynomial_entropy_estimate, serre_series, EntropyEstimate, PolyEntropyEstimate, SerreSeries, SerreTerm, Source};
pub use modules::ComplexOfModules;
pub use serre::{budget_from_env, DerivedCategory, Direction, SerreDimensions, SerrePowers, BUDGET_ENV, DEFAULT_BUDGET};
pub use window::{is_d_hereditary_window, is_d_rep_infinite_window, k_rep_infinite_window, WindowVerdict};
