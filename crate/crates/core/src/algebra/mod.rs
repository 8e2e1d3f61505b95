//! Bound quiver algebras, their modules and the homological toolkit.

pub mod build;
pub mod element;
pub mod finite;
pub mod projmap;
pub mod quiver;
pub mod rep;
pub mod resolution;
pub mod tensor;

pub use build::{BoundQuiverAlgebra, DEFAULT_MAX_PATH_LENGTH};
pub use element::Elem;
pub use finite::FiniteAlgebra;
pub use projmap::{proj_rep, ProjLayout, ProjMap};
pub use quiver::{Arrow, Path, Quiver, Relation, RelationSet};
pub use rep::{hom_space, injective, projective, simple, ModuleMap, Representation};
pub use resolution::{ext_dims, global_dimension, minimal_projective_resolution, ProjectiveResolution, DEFAULT_GL_DIM_BOUND};
pub use tensor::{tensor_algebra, tensor_arrow, TensorArrow};
