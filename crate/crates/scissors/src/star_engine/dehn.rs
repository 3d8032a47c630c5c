//! Dehn-type invariants `χ̃(j)` with values in `R ⊗ R` and the classical
//! obstruction obtained by killing rational first slots.

use super::families::dehn_s;
use super::{Evaluator, StarError};
use crate::constructible::PolytopeElement;
use crate::ring_values::{ExactReal, NumericTensor, Policy, RingError, RingValue, Tensor};

/// A value of `R ⊗ R` (or `Q`, embedded in the all-ones bucket) as a tensor.
pub fn as_tensor(v: &RingValue, rank: usize) -> Result<Tensor, StarError> {
    let p = v.to_poly()?;
    let t = p.coefficient(&[]);
    if t.rank() == rank {
        return Ok(t);
    }
    t.rerank(rank)
        .ok_or_else(|| RingError::RankMismatch { left: t.rank(), right: rank }.into())
}

/// `χ̃(j, ξ)`: the coefficient of `y^j` in `S̃^{1,y}(ξ)`.
pub fn chi_tilde(x: &PolytopeElement, j: u32, ev: &Evaluator) -> Result<Tensor, StarError> {
    let v = ev.polytope_element(&dehn_s(RingValue::one(), RingValue::var("y")), x)?;
    as_tensor(&v.coefficient(&[("y", j)])?, 2)
}

/// Multiplies the second slot by `λ`, as for lengths under a dilatation.
pub fn scale_lengths(t: &Tensor, lambda: &ExactReal) -> Tensor {
    t.mul(&Tensor::pure(&[ExactReal::one(), lambda.clone()]))
}

/// Normal form in `(R/Q) ⊗ R`: structurally rational first slots are dropped,
/// then the policy form is taken and first slots detected as rational are
/// dropped too.
pub fn obstruction(t: &Tensor, policy: Policy) -> NumericTensor {
    let mut n = t.kill_rational_slot(0).policy_form(policy.max_den, policy.tol);
    n.terms.retain(|(_, s)| s[0] != 1.0);
    n
}

/// Obstruction of `χ̃(1, a) - χ̃(1, b)`; zero when `a` and `b` may be
/// scissors congruent as far as this invariant sees.
pub fn dehn_difference(a: &Tensor, b: &Tensor, policy: Policy) -> NumericTensor {
    obstruction(&a.sub(b), policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::{q, qfrac};
    use crate::exact_geometry::Polytope;
    use num_traits::ToPrimitive;

    fn tetra() -> PolytopeElement {
        let p = Polytope::from_int_points(3, &[vec![1, 1, 1], vec![1, -1, -1], vec![-1, 1, -1], vec![-1, -1, 1]])
            .unwrap();
        PolytopeElement::from_polytope(&p)
    }

    #[test]
    fn cube_chi_tilde_is_three() {
        let ev = Evaluator::default();
        let cube = PolytopeElement::from_polytope(&Polytope::unit_cube(3));
        let t = chi_tilde(&cube, 1, &ev).unwrap();
        assert_eq!(t, Tensor::scalar(2, q(3)));
        assert!(obstruction(&t, Policy::default()).is_zero());
    }

    #[test]
    fn regular_tetrahedron_has_an_obstruction() {
        let ev = Evaluator::default();
        let t = chi_tilde(&tetra(), 1, &ev).unwrap();
        let edge = ExactReal::scaled_sqrt(&q(2), &q(2));
        let dihedral = ExactReal::angle_fraction(&qfrac(1, 9), 1);
        let outer = ExactReal::rational(qfrac(1, 2)).sub(&dihedral);
        assert_eq!(t, Tensor::pure(&[outer, edge]).scale(&q(6)));
        assert!(!obstruction(&t, Policy::default()).is_zero());

        let vol = tetra().terms().next().unwrap().0.volume().to_f64();
        assert!((vol - 8.0 / 3.0).abs() < 1e-12);
        let lambda = ExactReal::numeric((1.0 / vol).cbrt());
        let cube = chi_tilde(&PolytopeElement::from_polytope(&Polytope::unit_cube(3)), 1, &ev).unwrap();
        let d = dehn_difference(&cube, &scale_lengths(&t, &lambda), Policy::default());
        assert!(!d.is_zero());
        assert!(d.max_abs() > 0.1, "{}", d.max_abs().to_f64().unwrap());
    }

    #[test]
    fn bar_and_l_tromino_have_equal_obstruction() {
        let ev = Evaluator::default();
        let cuboid = |lo: [i64; 3], hi: [i64; 3]| {
            PolytopeElement::from_polytope(&Polytope::cuboid(&lo.map(q), &hi.map(q)))
        };
        let bar = cuboid([0, 0, 0], [3, 1, 1]);
        let tromino = cuboid([0, 0, 0], [1, 1, 1])
            .add(&cuboid([1, 0, 0], [2, 1, 1]))
            .add(&cuboid([0, 1, 0], [1, 2, 1]))
            .sub(&cuboid([1, 0, 0], [1, 1, 1]))
            .sub(&cuboid([0, 1, 0], [1, 1, 1]));
        assert_eq!(tromino.euler_char(), 1.into());
        let a = chi_tilde(&bar, 1, &ev).unwrap();
        let b = chi_tilde(&tromino, 1, &ev).unwrap();
        assert!(dehn_difference(&a, &b, Policy::default()).is_zero());
        assert_eq!(a, b);
    }
}
