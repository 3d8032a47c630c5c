//! E₂ coordinates, α in degrees ≤ 2 and E⁺ membership.

use super::{GradedError, Membership, Method};
use crate::constructible::PolytopeElement;
use crate::exact_geometry::linalg::{q, Rational};
use crate::exact_geometry::Polytope;
use crate::ring_values::RingValue;
use crate::star_engine::families::intrinsic;
use crate::star_engine::Evaluator;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// `(k, λ, μ) ↔ k p² + p q(λ) + q(μ) q(1)`, read off through
/// `(χ, χ(1,·), 𝒱₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct E2Coords {
    pub k: BigInt,
    pub lambda: RingValue,
    pub mu: RingValue,
}

fn intrinsic_upto(x: &PolytopeElement, n: u32, ev: &Evaluator) -> Result<Vec<RingValue>, GradedError> {
    let v = ev.polytope_element(&intrinsic(), x)?;
    (0..=n).map(|j| Ok(v.coefficient(&[("x", j)])?)).collect()
}

pub fn e2_coords(x: &PolytopeElement, ev: &Evaluator) -> Result<E2Coords, GradedError> {
    if let Some(d) = x.support_dim().filter(|d| *d > 2) {
        return Err(GradedError::Degree { degree: d, n: 2 });
    }
    let c = intrinsic_upto(x, 2, ev)?;
    let k = c[0].as_int().expect("Euler characteristic is an integer");
    Ok(E2Coords { k, lambda: c[1].clone(), mu: c[2].clone() })
}

/// Half-open segment `[0, |λ|)` in `Q^1`, signed by `λ`.
fn half_open(lambda: &Rational) -> PolytopeElement {
    if lambda.is_zero() {
        return PolytopeElement::zero(1);
    }
    let l = lambda.abs();
    let seg = Polytope::from_points(1, &[vec![q(0)], vec![l.clone()]]).expect("two points");
    let x = PolytopeElement::from_polytope(&seg).sub(&PolytopeElement::from_polytope(&Polytope::point(&[l])));
    if lambda.is_negative() {
        x.neg()
    } else {
        x
    }
}

/// The witness `k p² + p q(λ) + q(μ) q(1)` in `Q^2`; negative lengths give
/// negated segments.
pub fn realize_e2(k: &BigInt, lambda: &Rational, mu: &Rational) -> PolytopeElement {
    let p = PolytopeElement::from_polytope(&Polytope::point(&[q(0)]));
    let p2 = p.product(&p).scale_big(k);
    let pq = p.product(&half_open(lambda));
    let qq = half_open(mu).product(&half_open(&q(1)));
    p2.add(&pq).add(&qq)
}

/// `α_i(P) = Σ_{dim σ = i} 𝒲(ν(σ,P)) τ_i(σ)` with Ê₀ = Z (count), Ê₁ = R
/// (length) and Ê₂ = R (area).
pub fn alpha(x: &PolytopeElement, i: usize, ev: &Evaluator) -> Result<RingValue, GradedError> {
    if i > 2 {
        return Err(GradedError::AlphaOutOfRange(i));
    }
    Ok(intrinsic_upto(x, i as u32, ev)?.pop().expect("nonempty"))
}

/// `I ξ = (-1)^n ξ` in E_n. Decided exactly when it holds pointwise;
/// otherwise through intrinsic volumes, on which `I` acts by `(-1)^i`.
pub fn membership_e(x: &PolytopeElement, n: usize, ev: &Evaluator) -> Result<Membership, GradedError> {
    let ix = x.interior();
    let target = if n.is_multiple_of(2) { x.clone() } else { x.neg() };
    if ix.sub(&target).is_zero() {
        return Ok(Membership { member: Some(true), method: Method::Exact });
    }
    let c = intrinsic_upto(x, n as u32, ev)?;
    let odd_part_vanishes = c.iter().enumerate().filter(|(i, _)| (i + n) % 2 == 1).all(|(_, v)| v.is_zero());
    Ok(match (odd_part_vanishes, n <= 2) {
        (false, _) => Membership { member: Some(false), method: Method::CompleteProbes },
        (true, true) => Membership { member: Some(true), method: Method::CompleteProbes },
        (true, false) => Membership { member: None, method: Method::ProbeEquality },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::qfrac;

    fn square() -> PolytopeElement {
        PolytopeElement::from_polytope(&Polytope::unit_cube(2))
    }

    #[test]
    fn coordinates_of_simple_elements() {
        let ev = Evaluator::default();
        let c = e2_coords(&square(), &ev).unwrap();
        assert_eq!((c.k, c.lambda, c.mu), (BigInt::from(1), RingValue::from(2), RingValue::from(1)));
        let pt = PolytopeElement::from_polytope(&Polytope::point(&[q(3), q(1)]));
        let c = e2_coords(&pt, &ev).unwrap();
        assert_eq!((c.k, c.lambda, c.mu), (BigInt::from(1), RingValue::from(0), RingValue::from(0)));
        let seg = |y: i64| {
            PolytopeElement::from_polytope(&Polytope::from_int_points(2, &[vec![0, y], vec![1, y]]).unwrap())
        };
        let c = e2_coords(&seg(0).add(&seg(2)), &ev).unwrap();
        assert_eq!((c.k, c.lambda, c.mu), (BigInt::from(2), RingValue::from(2), RingValue::from(0)));
    }

    #[test]
    fn round_trip() {
        let ev = Evaluator::default();
        for (k, l, m) in [(3, qfrac(5, 2), qfrac(1, 3)), (-1, qfrac(-2, 7), qfrac(4, 1)), (0, q(0), q(0))] {
            let x = realize_e2(&BigInt::from(k), &l, &m);
            let c = e2_coords(&x, &ev).unwrap();
            assert_eq!(c, E2Coords { k: BigInt::from(k), lambda: l.into(), mu: m.into() });
        }
    }

    #[test]
    fn alpha_values() {
        let ev = Evaluator::default();
        assert_eq!(alpha(&square(), 0, &ev).unwrap(), RingValue::from(1));
        assert_eq!(alpha(&square(), 1, &ev).unwrap(), RingValue::from(2));
        assert_eq!(alpha(&square(), 2, &ev).unwrap(), RingValue::from(1));
        assert!(matches!(alpha(&square(), 3, &ev), Err(GradedError::AlphaOutOfRange(3))));
        // absolute: the same square inside Q^4
        let lifted = Polytope::from_int_points(4, &[
            vec![0, 0, 1, 1], vec![1, 0, 1, 1], vec![0, 1, 1, 1], vec![1, 1, 1, 1],
        ])
        .unwrap();
        let lifted = PolytopeElement::from_polytope(&lifted);
        for i in 0..3 {
            assert_eq!(alpha(&lifted, i, &ev).unwrap(), alpha(&square(), i, &ev).unwrap());
        }
    }

    #[test]
    fn plus_membership() {
        let ev = Evaluator::default();
        let sq = square();
        let boundary = sq.sub(&sq.interior());
        // the double of a square is a closed surface
        let double = sq.scale(2).sub(&boundary);
        assert_eq!(membership_e(&double, 2, &ev).unwrap(), Membership { member: Some(true), method: Method::Exact });
        assert_eq!(membership_e(&boundary, 1, &ev).unwrap().member, Some(true));
        assert_eq!(membership_e(&sq, 2, &ev).unwrap(), Membership {
            member: Some(false),
            method: Method::CompleteProbes
        });
        let p = PolytopeElement::from_polytope(&Polytope::point(&[q(0)]));
        assert_eq!(membership_e(&p, 1, &ev).unwrap().member, Some(false));
    }
}
