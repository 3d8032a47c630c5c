//! Exact valuation algebra of polytopes and cones.
//!
//! Elements of the polytope and cone groups are integer combinations of closed
//! convex pieces with an open-cell normal form; invariants are multiplicative
//! valuations composed by the star product.
//!
//! Dense linear algebra is generic over [`Field`]; the geometry layer fixes
//! the scalar to [`Rational`].

#![allow(clippy::needless_range_loop)]

pub mod exact_geometry;
pub mod cone_invariants;
pub mod constructible;
pub mod ring_values;
pub mod star_engine;
pub mod graded_rings;
pub mod delta_homology;
pub mod io;
pub mod suites;

pub use exact_geometry::linalg::Field;

/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
/// Exact coordinates.
pub type Rational = num_rational::BigRational;
/// Floating scalar for measurements that leave the rationals.
pub type Real = f64;
pub type QVec = Vec<Rational>;
pub type IVec = Vec<Integer>;
