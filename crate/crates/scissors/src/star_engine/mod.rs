//! Multiplicative invariants, the ⋆-product groupoid and the named families
//! built from the conical volume 𝒰 and the volume 𝒱.
//!
//! Invariants are expression trees ([`Morphism`], [`PolytopeInvariant`])
//! evaluated on convex pieces by an [`Evaluator`] and extended linearly to
//! elements. The ⋆-product sums over faces σ of a piece:
//! `(F⋆G)_V(P) = Σ_σ F_{V∩σ⊥}(ν(σ,P)) · G_σ(int σ)`.

mod eval;
mod invariant;

pub mod abstract_intrinsic;
pub mod dehn;
pub mod families;

pub use eval::Evaluator;
pub use invariant::{Frame, Morphism, Object, PolytopeInvariant};

use crate::cone_invariants::ConeInvariantError;
use crate::constructible::ConstructibleError;
use crate::exact_geometry::linalg::Rational;
use crate::exact_geometry::{GeometryError, Polytope, Subspace};
use crate::ring_values::{Policy, RingError, RingValue};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StarError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cone(#[from] ConeInvariantError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Constructible(#[from] ConstructibleError),
    #[error("incompatible ⋆-product in dimension {dim}: source {source_value} vs target {target_value}")]
    Incompatible { dim: usize, source_value: String, target_value: String },
    #[error("frame: {0}")]
    Frame(String),
}

/// Tolerance for comparing objects on coordinate subspaces.
pub const COMPAT_TOL: f64 = 1e-9;

/// Compares two objects on the coordinate subspaces `R^0 ⊂ … ⊂ R^max_dim`.
pub fn check_equal_objects(a: &Object, b: &Object, ev: &Evaluator, max_dim: usize) -> Result<(), StarError> {
    for d in 0..=max_dim {
        let v = Subspace::coordinate(max_dim, &(0..d).collect::<Vec<_>>());
        let (x, y) = (ev.object(a, &v)?, ev.object(b, &v)?);
        if !x.eq_within(&y, COMPAT_TOL, Policy::default())? {
            return Err(StarError::Incompatible { dim: d, source_value: x.to_string(), target_value: y.to_string() });
        }
    }
    Ok(())
}

/// `F ⋆ G` for morphisms, refusing unless `s(F) = t(G)` in dimensions
/// `0..=max_dim`.
pub fn star(f: Morphism, g: Morphism, ev: &Evaluator, max_dim: usize) -> Result<Morphism, StarError> {
    check_equal_objects(&f.source(), &g.target(), ev, max_dim)?;
    Ok(f.then(g))
}

/// `F ⋆ G` for a polytope invariant `G`, refusing unless `s(F) = p(G)`.
pub fn transport(f: Morphism, g: PolytopeInvariant, ev: &Evaluator, max_dim: usize) -> Result<PolytopeInvariant, StarError> {
    check_equal_objects(&f.source(), &g.location(), ev, max_dim)?;
    Ok(g.transported(f))
}

/// McMullen's frame invariant by direct maximization: the `(d-k)`-volume of
/// the face reached by maximizing along `u_1, .., u_k`, with `d = dim V`.
pub fn frame_invariant_direct(frame: &Frame, p: &Polytope, v: &Subspace) -> RingValue {
    let face = frame.extreme_face(p);
    let k = frame.len();
    if v.dim() < k || face.dim() != v.dim() - k {
        return RingValue::zero();
    }
    let vol = face.volume();
    crate::ring_values::ExactReal::scaled_sqrt(&vol.coef, &vol.radicand).into()
}

/// Scales a polytope invariant value of degree `n` homogeneously:
/// `a^n · x`. Used for homogeneity checks.
pub fn homogeneous_scale(x: &RingValue, a: &Rational, n: u32) -> Result<RingValue, StarError> {
    Ok(x.mul(&RingValue::from(a.clone()).pow(n)?)?)
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;
    use crate::cone_invariants::McOptions;
    use crate::constructible::{ConeElement, PolytopeElement};
    use crate::exact_geometry::linalg::{ivec, q, qfrac, qvec};
    use crate::exact_geometry::Cone;

    fn ev() -> Evaluator {
        Evaluator::new(McOptions { samples: 20_000, seed: 1 })
    }

    fn rv(n: i64) -> RingValue {
        RingValue::from(n)
    }

    fn eq(a: &RingValue, b: &RingValue) -> bool {
        a.eq_within(b, 1e-9, Policy::default()).unwrap()
    }

    #[test]
    fn base_values() {
        let e = ev();
        let line = ConeElement::cone(&Cone::whole(1));
        assert_eq!(e.cone_element(&Morphism::Epsilon, &line).unwrap(), rv(1));
        assert_eq!(e.cone_element(&Morphism::LocalEuler, &line).unwrap(), rv(-1));
        let t2 = ConeElement::cone(&Cone::origin(2));
        assert_eq!(e.cone_element(&Morphism::DualVolume, &t2).unwrap(), rv(1));
        let cube = PolytopeElement::from_polytope(&Polytope::unit_cube(3));
        assert_eq!(e.polytope_element(&PolytopeInvariant::Volume, &cube).unwrap(), rv(1));
    }

    #[test]
    fn dual_volume_star_zero_is_euler() {
        let e = ev();
        let g = star_w_zero();
        let p = Polytope::from_int_points(3, &[vec![0, 0, 0], vec![2, 0, 0], vec![0, 3, 0], vec![1, 1, 4], vec![2, 2, 1]]).unwrap();
        let x = PolytopeElement::from_polytope(&p);
        assert!(eq(&e.polytope_element(&g, &x).unwrap(), &rv(1)));
        let u_chi = PolytopeInvariant::Euler.transported(Morphism::ConicalVolume);
        assert!(eq(&e.polytope_element(&u_chi, &x).unwrap(), &rv(0)));
    }

    #[test]
    fn intrinsic_volumes_of_square_and_box() {
        let e = ev();
        let sq = PolytopeElement::from_polytope(&Polytope::unit_cube(2));
        let val = e.polytope_element(&intrinsic(), &sq).unwrap();
        let coeffs: Vec<RingValue> = (0..3).map(|j| val.coefficient(&[("x", j)]).unwrap()).collect();
        assert_eq!(coeffs, vec![rv(1), rv(2), rv(1)]);
        let b = PolytopeElement::from_polytope(&Polytope::cuboid(&[q(0), q(0)], &[qfrac(3, 2), qfrac(2, 7)]));
        let val = e.polytope_element(&intrinsic(), &b).unwrap();
        assert_eq!(val.coefficient(&[("x", 1)]).unwrap(), RingValue::from(qfrac(3, 2) + qfrac(2, 7)));
        assert_eq!(val.coefficient(&[("x", 2)]).unwrap(), RingValue::from(qfrac(3, 7)));
    }

    #[test]
    fn conical_intrinsic_sum_is_one() {
        let e = ev();
        let quadrant = ConeElement::cone(&Cone::orthant(2, &[0, 1]));
        let val = e.cone_element(&conical_intrinsic(), &quadrant).unwrap();
        let c: Vec<RingValue> = (0..3).map(|j| val.coefficient(&[("x", j)]).unwrap()).collect();
        assert_eq!(c, vec![RingValue::from(qfrac(1, 4)), RingValue::from(qfrac(1, 2)), RingValue::from(qfrac(1, 4))]);
    }

    #[test]
    fn groupoid_laws_on_a_cone() {
        let e = ev();
        let c = Cone::from_generators(3, &[ivec(&[1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[-1, -1, 2]), ivec(&[2, -1, 1])], &[]);
        let x = ConeElement::cone(&c);
        // inverse of U is W
        let ud = Morphism::ConicalVolume.inverse();
        assert!(eq(&e.cone_element(&ud, &x).unwrap(), &e.cone_element(&Morphism::DualVolume, &x).unwrap()));
        // W ⋆ U = 1_1 = ε, U ⋆ W = 0
        let wu = star(Morphism::DualVolume, Morphism::ConicalVolume, &e, 3).unwrap();
        assert!(eq(&e.cone_element(&wu, &x).unwrap(), &rv(1)));
        let uw = star(Morphism::ConicalVolume, Morphism::DualVolume, &e, 3).unwrap();
        assert!(eq(&e.cone_element(&uw, &x).unwrap(), &rv(0)));
        // e = T^{1,-1}
        let t = t_xy(rv(1), rv(-1));
        assert!(eq(&e.cone_element(&t, &x).unwrap(), &e.cone_element(&Morphism::LocalEuler, &x).unwrap()));
        // incompatible product is refused
        assert!(star(Morphism::DualVolume, Morphism::DualVolume, &e, 3).is_err());
    }

    #[test]
    fn inverse_of_e_is_minus_e() {
        let e = ev();
        let line = ConeElement::cone(&Cone::whole(1));
        let inv = Morphism::LocalEuler.inverse();
        let me = Morphism::LocalEuler.by(rv(-1));
        assert_eq!(e.cone_element(&inv, &line).unwrap(), e.cone_element(&me, &line).unwrap());
    }

    #[test]
    fn scaled_volume_in_inches() {
        let e = ev();
        let cube = PolytopeElement::from_polytope(&Polytope::unit_cube(3));
        let g = PolytopeInvariant::Volume.by(rv(12));
        assert_eq!(e.polytope_element(&g, &cube).unwrap(), rv(1728));
    }

    #[test]
    fn frame_invariants_of_square() {
        let e = ev();
        let sq = Polytope::unit_cube(2);
        let v = Subspace::full(2);
        let f1 = Frame::new(vec![qvec(&[1, 0])]).unwrap();
        let f2 = Frame::new(vec![qvec(&[1, 0]), qvec(&[0, 1])]).unwrap();
        assert_eq!(frame_invariant_direct(&f1, &sq, &v), rv(1));
        assert_eq!(frame_invariant_direct(&f2, &sq, &v), rv(1));
        for fr in [f1, f2] {
            let k = fr.len() as u32;
            let val = e.polytope(&frame_polytope(&fr), &sq, &v).unwrap();
            assert_eq!(val.coefficient(&[("x", k)]).unwrap(), frame_invariant_direct(&fr, &sq, &v));
        }
        assert!(Frame::new(vec![qvec(&[1, 1])]).is_err());
    }

    #[test]
    fn frame_invariant_on_a_trapezoid_and_a_tetrahedron() {
        let e = ev();
        let trap = Polytope::from_int_points(2, &[vec![0, 0], vec![4, 0], vec![3, 2], vec![0, 2]]).unwrap();
        let v = Subspace::full(2);
        let f1 = Frame::new(vec![qvec(&[0, 1])]).unwrap();
        // the top edge has length 3, the bottom one 4
        assert_eq!(frame_invariant_direct(&f1, &trap, &v), rv(3));
        let val = e.polytope(&frame_polytope(&f1), &trap, &v).unwrap();
        assert_eq!(val.coefficient(&[("x", 1)]).unwrap(), rv(3));
        let tet = Polytope::from_int_points(3, &[vec![0, 0, 0], vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 1]]).unwrap();
        let v3 = Subspace::full(3);
        for vecs in [vec![qvec(&[0, 0, -1])], vec![qvec(&[0, 0, -1]), qvec(&[0, -1, 0])]] {
            let fr = Frame::new(vecs).unwrap();
            let direct = frame_invariant_direct(&fr, &tet, &v3);
            let val = e.polytope(&frame_polytope(&fr), &tet, &v3).unwrap();
            assert_eq!(val.coefficient(&[("x", fr.len() as u32)]).unwrap(), direct);
        }
        let fr = Frame::new(vec![qvec(&[0, 0, -1])]).unwrap();
        assert_eq!(frame_invariant_direct(&fr, &tet, &v3), rv(3));
    }

    #[test]
    fn k_on_a_sector() {
        let e = ev();
        let sec = ConeElement::cone(&Cone::from_generators(2, &[ivec(&[1, 0]), ivec(&[1, 1])], &[]));
        let val = e.cone_element(&k_morphism(), &sec).unwrap();
        // θ/2π ⊗ 1 - 1 ⊗ θ/2π with θ = π/4 is zero in R⊗R over Q
        assert!(val.is_zero());
        let sec = ConeElement::cone(&Cone::from_generators(2, &[ivec(&[1, 0]), ivec(&[1, 2])], &[]));
        let val = e.cone_element(&k_morphism(), &sec).unwrap();
        assert!(!val.is_zero());
        assert!(eq(&val.collapse().unwrap(), &rv(0)));
    }
}
