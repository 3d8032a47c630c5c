//! The graded rings E (polytopes mod isometry) and L (cones mod isometry) at
//! desk scale: named generators with geometric witnesses, the tables of
//! invariants and involutions, E₂ coordinates, α for low degree, δ on L and
//! membership in E⁺ / L⁺.
//!
//! Elements of E_n and L_n are coinvariants, so equality is not decided by
//! comparing constructible functions. Each comparison reports how it was
//! settled, see [`Method`].

mod delta;
mod e2;
mod expr;
mod realize;
mod tables;

pub use delta::{delta_l, delta_realization, identify_l, key_checks, membership_l, KeyCheck, LCoords};
pub use e2::{alpha, e2_coords, membership_e, realize_e2, E2Coords};
pub use expr::{Angle, Generator, NamedExpr, Ring};
pub use realize::{compare, probes, realize, sector_element, Comparison, Realization};
pub use tables::{l2_relation_check, rigid_checks, sphere_minus_projective_plane, verify_tables, TableEntry};

use crate::cone_invariants::ConeInvariantError;
use crate::constructible::ConstructibleError;
use crate::exact_geometry::GeometryError;
use crate::ring_values::RingError;
use crate::star_engine::StarError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GradedError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("expression of degree {degree} cannot be realized in degree {n}")]
    Degree { degree: usize, n: usize },
    #[error("mixed rings in one expression")]
    MixedRing,
    #[error("not realizable with rational coordinates: {0}")]
    Unrealizable(String),
    #[error("alpha_{0} is only modelled for i <= 2")]
    AlphaOutOfRange(usize),
    #[error(transparent)]
    Star(#[from] StarError),
    #[error(transparent)]
    Constructible(#[from] ConstructibleError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cone(#[from] ConeInvariantError),
}

/// How an equality between ring elements was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Method {
    /// Equal as constructible functions in a common embedding.
    Exact,
    /// Equal on a set of invariants known to separate elements in this degree.
    CompleteProbes,
    /// Equal on the available invariants; not a proof.
    ProbeEquality,
    /// Floating evaluation with tolerance 1e-12.
    Numeric,
}

/// Membership verdict; `None` when the available invariants cannot decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: Option<bool>,
    pub method: Method,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::CompleteProbes => "complete-probes",
            Method::ProbeEquality => "probe-equality",
            Method::Numeric => "numeric",
        })
    }
}
