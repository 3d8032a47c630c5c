//! Seeded generators for random cones, polytopes, elements and frames.

use crate::constructible::{ConeElement, PolytopeElement};
use crate::exact_geometry::linalg::{inverse, q, qfrac, IVec, QVec, Rational};
use crate::exact_geometry::{Cone, Polytope};
use crate::star_engine::Frame;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

/// A generator keyed by `(seed, name)`; distinct names give independent
/// streams, so cases do not depend on which other cases ran.
pub fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    // FNV-1a, stable across platforms and releases
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(h);
    rng
}

/// A nonzero integer vector with entries in `[-r, r]`.
pub fn int_vec(rng: &mut impl Rng, d: usize, r: i64) -> IVec {
    loop {
        let v: Vec<i64> = (0..d).map(|_| rng.random_range(-r..=r)).collect();
        if v.iter().any(|x| *x != 0) {
            return v.into_iter().map(BigInt::from).collect();
        }
    }
}

/// A closed convex cone in `R^d` with 1 to `d + 1` rays and, one time in
/// five, a lineality direction.
pub fn random_cone(rng: &mut impl Rng, d: usize) -> Cone {
    if d == 0 {
        return Cone::origin(0);
    }
    let k = rng.random_range(1..=d + 1);
    let rays: Vec<IVec> = (0..k).map(|_| int_vec(rng, d, 2)).collect();
    let lines: Vec<IVec> = if rng.random_range(0..5) == 0 { vec![int_vec(rng, d, 1)] } else { Vec::new() };
    Cone::from_generators(d, &rays, &lines)
}

/// A pointed cone of full dimension.
pub fn random_full_cone(rng: &mut impl Rng, d: usize) -> Cone {
    loop {
        let c = random_cone(rng, d);
        if c.dim() == d && c.is_pointed() {
            return c;
        }
    }
}

/// `Σ k_i [C_i]` with one to three pieces and coefficients in `±{1, 2}`.
pub fn random_cone_element(rng: &mut impl Rng, d: usize) -> ConeElement {
    let mut x = ConeElement::cone(&Cone::origin(d)).scale(0);
    for _ in 0..rng.random_range(1..=3) {
        let k = [-2, -1, 1, 2][rng.random_range(0..4)];
        x = x.add(&ConeElement::cone(&random_cone(rng, d)).scale(k));
    }
    x
}

/// Convex hull of `d + 1` to `d + 3` integer points in `[-3, 3]^d`, full
/// dimensional.
pub fn random_polytope(rng: &mut impl Rng, d: usize) -> Polytope {
    if d == 0 {
        return Polytope::point(&[]);
    }
    loop {
        let n = rng.random_range(d + 1..=d + 3);
        let pts: Vec<QVec> = (0..n).map(|_| (0..d).map(|_| q(rng.random_range(-3..=3))).collect()).collect();
        if let Ok(p) = Polytope::from_points(d, &pts) {
            if p.dim() == d {
                return p;
            }
        }
    }
}

/// Polytopes of any dimension up to `d` in `R^d`.
pub fn random_polytope_any(rng: &mut impl Rng, d: usize) -> Polytope {
    if d == 0 {
        return Polytope::point(&[]);
    }
    let n = rng.random_range(1..=d + 2);
    let pts: Vec<QVec> = (0..n).map(|_| (0..d).map(|_| q(rng.random_range(-2..=2))).collect()).collect();
    Polytope::from_points(d, &pts).expect("nonempty point set")
}

pub fn random_polytope_element(rng: &mut impl Rng, d: usize) -> PolytopeElement {
    let mut x = PolytopeElement::zero(d);
    for _ in 0..rng.random_range(1..=3) {
        let k = [-2, -1, 1, 2][rng.random_range(0..4)];
        x = x.add(&PolytopeElement::from_polytope(&random_polytope_any(rng, d)).scale(k));
    }
    x
}

/// A positive rational with numerator and denominator at most `m`.
pub fn random_positive(rng: &mut impl Rng, m: i64) -> Rational {
    qfrac(rng.random_range(1..=m), rng.random_range(1..=m))
}

/// A rational orthogonal matrix from the Cayley transform
/// `(1 − A)(1 + A)^{-1}` of a random skew-symmetric `A`, rows permuted and
/// signed at random.
pub fn random_orthogonal(rng: &mut impl Rng, d: usize) -> Vec<QVec> {
    let mut a = vec![vec![q(0); d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let x = qfrac(rng.random_range(-3..=3), rng.random_range(1..=3));
            a[i][j] = x.clone();
            a[j][i] = -x;
        }
    }
    let id = |i: usize, j: usize| if i == j { q(1) } else { q(0) };
    let minus: Vec<QVec> = (0..d).map(|i| (0..d).map(|j| id(i, j) - &a[i][j]).collect()).collect();
    let plus: Vec<QVec> = (0..d).map(|i| (0..d).map(|j| id(i, j) + &a[i][j]).collect()).collect();
    let inv = inverse(&plus).expect("1 + skew is invertible");
    let mut rows: Vec<QVec> = (0..d)
        .map(|i| (0..d).map(|j| (0..d).map(|k| &minus[i][k] * &inv[k][j]).sum()).collect())
        .collect();
    for i in (1..d).rev() {
        rows.swap(i, rng.random_range(0..=i));
    }
    for r in rows.iter_mut() {
        if rng.random_bool(0.5) {
            r.iter_mut().for_each(|x| *x = -x.clone());
        }
    }
    rows
}

/// The first `k` rows of a random rational orthogonal matrix.
pub fn random_frame(rng: &mut impl Rng, d: usize, k: usize) -> Frame {
    let rows = random_orthogonal(rng, d);
    Frame::new(rows[..k].to_vec()).expect("rows of an orthogonal matrix are orthonormal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::dot_q;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = stream(7, "groupoid").random();
        let b: u64 = stream(7, "groupoid").random();
        let c: u64 = stream(7, "duality").random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn orthogonal_matrices() {
        let mut rng = stream(1, "orth");
        for d in 1..=4 {
            let m = random_orthogonal(&mut rng, d);
            for i in 0..d {
                for j in 0..d {
                    assert_eq!(dot_q(&m[i], &m[j]), if i == j { q(1) } else { q(0) });
                }
            }
        }
    }

    #[test]
    fn shapes_have_requested_dimension() {
        let mut rng = stream(3, "shapes");
        for d in 0..=3 {
            assert_eq!(random_polytope(&mut rng, d).dim(), d);
            assert_eq!(random_full_cone(&mut rng, d).dim(), d);
        }
    }
}
