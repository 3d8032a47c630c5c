//! Intrinsic volumes of abstract Euclidean simplicial complexes, where the
//! normal cones are conical complexes known only through Gram matrices.

use super::StarError;
use crate::cone_invariants::{complex_dual_volume, McOptions};
use crate::exact_geometry::AbstractComplex;
use crate::ring_values::{ExactReal, RingValue};

/// `χ(j, K) = Σ_{dim σ = j} 𝒲(ν(σ, K)) 𝒱_j(σ)` for `j = 0..=dim K`, together
/// with the largest Monte-Carlo half-width used.
pub fn intrinsic_volumes(k: &AbstractComplex, opts: McOptions) -> Result<(Vec<RingValue>, f64), StarError> {
    let top = k.complex().dim().unwrap_or(0);
    let mut out = vec![RingValue::zero(); top + 1];
    let mut hw: f64 = 0.0;
    for s in k.complex().simplices() {
        let j = s.len() - 1;
        let w = complex_dual_volume(&k.normal_complex(s)?, opts)?;
        hw = hw.max(w.half_width);
        let vol = k.volume(s);
        let v: RingValue = ExactReal::scaled_sqrt(&vol.coef, &vol.radicand).into();
        out[j] = out[j].add(&w.value.mul(&v)?)?;
    }
    Ok((out, hw))
}

/// Angle defects `1 - θ_v/2π` summed over vertices; equals `χ(0, K)`.
pub fn total_angle_defect(k: &AbstractComplex, opts: McOptions) -> Result<RingValue, StarError> {
    let mut acc = RingValue::zero();
    for v in k.complex().vertices() {
        acc = acc.add(&complex_dual_volume(&k.germ_cone(v)?, opts)?.value)?;
    }
    Ok(acc)
}

/// Named closed surfaces with equilateral faces of squared edge length `l2`.
pub mod surfaces {
    use crate::exact_geometry::abstract_complex::sq_lengths;
    use crate::exact_geometry::linalg::Rational;
    use crate::exact_geometry::{AbstractComplex, GeometryError};

    fn equilateral(tris: &[[usize; 3]], l2: &Rational) -> Result<AbstractComplex, GeometryError> {
        let mut edges = Vec::new();
        for t in tris {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                edges.push((a, b, l2.clone()));
            }
        }
        let maximal: Vec<Vec<usize>> = tris.iter().map(|t| t.to_vec()).collect();
        AbstractComplex::new(&maximal, sq_lengths(&edges))
    }

    /// Boundary of the regular octahedron: vertices ±e_i as 0..6.
    pub fn octahedron(l2: &Rational) -> Result<AbstractComplex, GeometryError> {
        let mut tris = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    tris.push([a, b, c]);
                }
            }
        }
        equilateral(&tris, l2)
    }

    /// The six-vertex triangulation of the real projective plane.
    pub fn projective_plane(l2: &Rational) -> Result<AbstractComplex, GeometryError> {
        let tris = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
        ];
        equilateral(&tris, l2)
    }

    /// The seven-vertex torus; every vertex has degree 6, so equilateral
    /// faces give a flat metric.
    pub fn flat_torus(l2: &Rational) -> Result<AbstractComplex, GeometryError> {
        let tris: Vec<[usize; 3]> =
            (0..7).flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]).collect();
        equilateral(&tris, l2)
    }

    /// Surface of the unit cube, each square split along a diagonal.
    pub fn cube_surface() -> Result<AbstractComplex, GeometryError> {
        let p = |i: usize| [(i & 1) as i64, ((i >> 1) & 1) as i64, ((i >> 2) & 1) as i64];
        let squares: [[usize; 4]; 6] =
            [[0, 1, 3, 2], [4, 5, 7, 6], [0, 1, 5, 4], [2, 3, 7, 6], [0, 2, 6, 4], [1, 3, 7, 5]];
        let mut tris = Vec::new();
        for s in squares {
            tris.push(vec![s[0], s[1], s[2]]);
            tris.push(vec![s[0], s[2], s[3]]);
        }
        let mut edges = Vec::new();
        for t in &tris {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                let (x, y) = (p(a), p(b));
                let d2: i64 = x.iter().zip(&y).map(|(u, v)| (u - v) * (u - v)).sum();
                edges.push((a, b, Rational::from_integer(d2.into())));
            }
        }
        AbstractComplex::new(&tris, sq_lengths(&edges))
    }
}

#[cfg(test)]
mod tests {
    use super::surfaces::*;
    use super::*;
    use crate::exact_geometry::linalg::q;

    #[test]
    fn gauss_bonnet_on_closed_surfaces() {
        let o = McOptions::default();
        assert_eq!(total_angle_defect(&cube_surface().unwrap(), o).unwrap(), RingValue::from(2));
        assert_eq!(total_angle_defect(&octahedron(&q(1)).unwrap(), o).unwrap(), RingValue::from(2));
        assert_eq!(total_angle_defect(&flat_torus(&q(1)).unwrap(), o).unwrap(), RingValue::from(0));
        assert_eq!(total_angle_defect(&projective_plane(&q(1)).unwrap(), o).unwrap(), RingValue::from(1));
    }

    #[test]
    fn closed_surface_has_no_length_term() {
        let (v, _) = intrinsic_volumes(&cube_surface().unwrap(), McOptions::default()).unwrap();
        assert_eq!(v, vec![RingValue::from(2), RingValue::zero(), RingValue::from(6)]);
    }
}
