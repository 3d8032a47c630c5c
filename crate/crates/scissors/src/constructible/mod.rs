//! Elements of the polytope group P(V) and the cone group Σ(V) as integer
//! combinations of closed convex pieces, with an open-cell normal form.
//!
//! Two elements are equal iff their difference has an empty normal form: the
//! pieces are cut along the union of all their facet hyperplanes and span
//! equations, and each relatively open cell of that arrangement carries the
//! sum of the coefficients of the pieces containing it.

mod cone_element;
mod polytope_element;

pub use cone_element::ConeElement;
pub use polytope_element::PolytopeElement;

use crate::exact_geometry::arrangement::{refine, union_hyperplanes};
use crate::exact_geometry::{Cone, GeometryError, IVec};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructibleError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("support dimension {support} exceeds filtration degree {n}")]
    Filtration { n: usize, support: usize },
    #[error("dilation factor must be nonzero")]
    ZeroDilation,
    #[error("unsupported map: {0}")]
    UnsupportedMap(String),
    #[error("piece is not contained in the ambient space")]
    OutsideSpace,
}

/// One relatively open cell of a normal form.
#[derive(Clone, Debug)]
pub struct OpenCell<C> {
    pub closure: C,
    pub dim: usize,
    pub weight: BigInt,
}

pub(crate) fn add_term<K: Ord + Clone>(terms: &mut BTreeMap<K, BigInt>, k: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let e = terms.entry(k.clone()).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        terms.remove(&k);
    }
}

/// Normal form of `Σ c_i [K_i]` for homogeneous pieces; with `skip_apex` the
/// pieces are homogenized polytopes and the apex is not a point of the set.
/// Cells are keyed by sign vector; `extra` hyperplanes are added to the
/// arrangement.
pub(crate) fn normal_form(
    terms: &BTreeMap<Cone, BigInt>,
    skip_apex: bool,
    extra: &[IVec],
) -> BTreeMap<Vec<i8>, (Cone, BigInt)> {
    let mut hs = union_hyperplanes(terms.keys());
    hs.extend(extra.iter().cloned());
    hs.sort();
    hs.dedup();
    let mut cells: BTreeMap<Vec<i8>, (Cone, BigInt)> = BTreeMap::new();
    for (piece, c) in terms {
        for cell in refine(piece, &hs, skip_apex) {
            let e = cells.entry(cell.signs).or_insert_with(|| (cell.closure, BigInt::zero()));
            e.1 += c;
        }
    }
    cells.retain(|_, (_, w)| !w.is_zero());
    cells
}

/// Sum over faces `F` of `K` of `(-1)^(dim F + shift) [F]`, with the apex
/// skipped for polytopes. With `shift = 0` this is `I([K])`.
pub(crate) fn signed_faces(k: &Cone, skip_apex: bool, shift: usize, c: &BigInt, out: &mut BTreeMap<Cone, BigInt>) {
    for f in k.faces() {
        if skip_apex && f.rays.is_empty() {
            continue;
        }
        let d = f.dim - usize::from(skip_apex) + shift;
        let s = if d.is_multiple_of(2) { c.clone() } else { -c.clone() };
        add_term(out, k.face_cone(f), s);
    }
}
