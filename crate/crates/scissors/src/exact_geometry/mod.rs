//! Exact rational geometry: linear algebra, cones, polytopes, face lattices,
//! duality, normal cones, complexes and abstract Euclidean complexes.

pub mod abstract_complex;
pub mod arrangement;
pub mod complex;
pub mod cone;
pub mod double_description;
pub mod linalg;
pub mod polytope;
pub mod subspace;



pub use abstract_complex::{AbstractComplex, ConicalComplex, ConicalSimplex};
pub use complex::{CellComplex, ConeComplex, SimplicialComplex};
pub use cone::{Cone, Face, Facets};
pub use linalg::{QVec, IVec, Rational};
pub use polytope::{Polytope, ScaledSqrt};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty polytope")]
    Empty,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("not contained: {0}")]
    NotContained(String),
    #[error("complexes have different underlying sets")]
    DifferentSupport,
    #[error("degenerate simplex metric on {0:?}")]
    DegenerateMetric(Vec<usize>),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
}
