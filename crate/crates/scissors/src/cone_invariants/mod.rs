//! The basic cone valuations ε, e, 𝒰 (conical volume) and 𝒲 = 𝒰∘D (dual
//! volume), and duality on cone elements.
//!
//! Solid angles are exact up to dimension 3: a planar angle is an angle atom,
//! a 3-dimensional pointed cone is a spherical polygon whose area is given by
//! Girard's formula from its dihedral angles. Higher dimensions use a
//! Monte-Carlo estimate with a 3σ half-width.

pub mod monte_carlo;

use crate::constructible::{ConeElement, ConstructibleError};
use crate::exact_geometry::abstract_complex::cholesky;
use crate::exact_geometry::linalg::{dot_q, inverse, project_off, qfrac, to_f64, to_q, QVec, Rational};
use crate::exact_geometry::{Cone, ConicalComplex, GeometryError, Subspace};
use crate::ring_values::{ExactReal, RingValue};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeInvariantError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Constructible(#[from] ConstructibleError),
    #[error("Monte-Carlo sample budget is zero for a {0}-dimensional solid angle")]
    ZeroSamples(usize),
}

/// How a solid angle was obtained; ordered from cheapest to least exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact0d,
    Exact1d,
    Planar,
    Girard,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McOptions {
    pub samples: u64,
    pub seed: u64,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions { samples: 1_000_000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolidAngle {
    pub value: RingValue,
    pub half_width: f64,
    pub method: Method,
}

impl SolidAngle {
    fn exact(x: ExactReal, method: Method) -> Self {
        SolidAngle { value: x.into(), half_width: 0.0, method }
    }

    fn zero() -> Self {
        SolidAngle { value: RingValue::zero(), half_width: 0.0, method: Method::Exact0d }
    }

    fn accumulate(&mut self, o: &SolidAngle, c: &BigInt) {
        let c = Rational::from_integer(c.clone());
        let term = o.value.scale(&c).expect("solid angles are scalars");
        self.value = self.value.add(&term).expect("solid angles are scalars");
        self.half_width += o.half_width * to_f64(&c).abs();
        self.method = self.method.max(o.method);
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().expect("solid angles are scalars")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": self.value.to_json(),
            "approx": self.to_f64(),
            "half_width": self.half_width,
            "method": self.method,
        })
    }
}

fn method_for(m: usize) -> Method {
    match m {
        0 => Method::Exact0d,
        1 => Method::Exact1d,
        2 => Method::Planar,
        3 => Method::Girard,
        _ => Method::MonteCarlo,
    }
}

/// `θ/2π` for the angle between `u` and `v`.
fn angle_between(u: &[Rational], v: &[Rational]) -> ExactReal {
    let uv = dot_q(u, v);
    let cos2 = &uv * &uv / (dot_q(u, u) * dot_q(v, v));
    ExactReal::angle_fraction(&cos2, sign_of(&uv))
}

fn sign_of(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `θ/2π` for the interior dihedral angle between two facets with inward
/// normals having inner products `nij`, `nii`, `njj`.
fn dihedral(nij: &Rational, nii: &Rational, njj: &Rational) -> ExactReal {
    let cos2 = nij * nij / (nii * njj);
    ExactReal::angle_fraction(&cos2, -sign_of(nij))
}

/// Girard: a spherical k-gon with interior angles θ_i has normalized area
/// `Σ θ_i/4π - (k-2)/4`.
fn girard(angle_fractions: &[ExactReal]) -> ExactReal {
    let k = angle_fractions.len() as i64;
    angle_fractions
        .iter()
        .fold(ExactReal::zero(), |a, f| a.add(&f.scale(&qfrac(1, 2))))
        .sub(&ExactReal::rational(qfrac(k - 2, 4)))
}

fn monte_carlo(normals: &[Vec<f64>], dim: usize, opts: McOptions) -> Result<SolidAngle, ConeInvariantError> {
    if opts.samples == 0 {
        return Err(ConeInvariantError::ZeroSamples(dim));
    }
    let (p, hw) = monte_carlo::cone_fraction(normals, dim, opts.samples, opts.seed);
    Ok(SolidAngle { value: RingValue::real(p, hw), half_width: hw, method: Method::MonteCarlo })
}

/// Conical volume 𝒰_V(C) of a closed convex cone inside the subspace `V`.
pub fn cone_volume(c: &Cone, v: &Subspace, opts: McOptions) -> Result<SolidAngle, ConeInvariantError> {
    if c.ambient() != v.ambient() || !c.span().is_subspace_of(v) {
        return Err(ConstructibleError::OutsideSpace.into());
    }
    let lin: Vec<QVec> = c.lineality_space().basis().to_vec();
    let m = v.dim() - lin.len();
    if c.dim() - lin.len() < m {
        return Ok(SolidAngle { method: method_for(m), ..SolidAngle::zero() });
    }
    let rays: Vec<QVec> = c.rays().iter().map(|r| project_off(&to_q(r), &lin)).collect();
    match m {
        0 => Ok(SolidAngle::exact(ExactReal::one(), Method::Exact0d)),
        1 => Ok(SolidAngle::exact(ExactReal::rational(qfrac(1, 2)), Method::Exact1d)),
        2 => Ok(SolidAngle::exact(angle_between(&rays[0], &rays[1]), Method::Planar)),
        _ => {
            let pointed = Cone::from_generators_q(c.ambient(), &rays, &[]);
            let span = pointed.span();
            let normals: Vec<QVec> = pointed.facets().normals.iter().map(|n| span.project(&to_q(n))).collect();
            if m == 3 {
                let mut fracs = Vec::with_capacity(rays.len());
                for r in pointed.rays() {
                    let r = to_q(r);
                    let on: Vec<&QVec> = normals.iter().filter(|n| dot_q(n, &r).is_zero()).collect();
                    debug_assert_eq!(on.len(), 2, "a ray of a 3-dimensional cone lies on two facets");
                    fracs.push(dihedral(&dot_q(on[0], on[1]), &dot_q(on[0], on[0]), &dot_q(on[1], on[1])));
                }
                return Ok(SolidAngle::exact(girard(&fracs), Method::Girard));
            }
            let basis: Vec<Vec<f64>> = span
                .orthogonal_basis()
                .iter()
                .map(|b| {
                    let f: Vec<f64> = b.iter().map(to_f64).collect();
                    let norm = f.iter().map(|x| x * x).sum::<f64>().sqrt();
                    f.into_iter().map(|x| x / norm).collect()
                })
                .collect();
            let coords: Vec<Vec<f64>> = normals
                .iter()
                .map(|n| basis.iter().map(|b| b.iter().zip(n).map(|(x, y)| x * to_f64(y)).sum()).collect())
                .collect();
            monte_carlo(&coords, m, opts)
        }
    }
}

/// Dual volume 𝒲(C) = 𝒰_V(D_V C); independent of `V`, zero unless `C` is
/// pointed.
pub fn cone_dual_volume(c: &Cone, opts: McOptions) -> Result<SolidAngle, ConeInvariantError> {
    if !c.is_pointed() {
        return Ok(SolidAngle { method: method_for(c.dim()), ..SolidAngle::zero() });
    }
    let span = c.span();
    cone_volume(&c.dual_in(&span)?, &span, opts)
}

/// 𝒰 extended linearly over the pieces of a cone element.
pub fn conical_volume(x: &ConeElement, opts: McOptions) -> Result<SolidAngle, ConeInvariantError> {
    let mut acc = SolidAngle::zero();
    for (i, (c, k)) in x.terms().enumerate() {
        let o = McOptions { seed: opts.seed.wrapping_add(i as u64), ..opts };
        acc.accumulate(&cone_volume(c, x.space(), o)?, k);
    }
    Ok(acc)
}

/// 𝒲 extended linearly over the pieces of a cone element.
pub fn dual_volume(x: &ConeElement, opts: McOptions) -> Result<SolidAngle, ConeInvariantError> {
    let mut acc = SolidAngle::zero();
    for (i, (c, k)) in x.terms().enumerate() {
        let o = McOptions { seed: opts.seed.wrapping_add(i as u64), ..opts };
        acc.accumulate(&cone_dual_volume(c, o)?, k);
    }
    Ok(acc)
}

pub fn dualize(x: &ConeElement) -> ConeElement {
    x.dual()
}

pub fn epsilon(x: &ConeElement) -> BigInt {
    x.epsilon()
}

pub fn local_euler(x: &ConeElement) -> BigInt {
    x.local_euler()
}

/// 𝒰 of the simplicial cone spanned by generators with Gram matrix `g`,
/// measured in the span of the generators.
pub fn gram_volume(g: &[QVec], opts: McOptions) -> Result<SolidAngle, ConeInvariantError> {
    let m = g.len();
    match m {
        0 => Ok(SolidAngle::exact(ExactReal::one(), Method::Exact0d)),
        1 => Ok(SolidAngle::exact(ExactReal::rational(qfrac(1, 2)), Method::Exact1d)),
        2 => {
            let cos2 = &g[0][1] * &g[0][1] / (&g[0][0] * &g[1][1]);
            Ok(SolidAngle::exact(ExactReal::angle_fraction(&cos2, sign_of(&g[0][1])), Method::Planar))
        }
        _ => {
            let w = inverse(g).ok_or(GeometryError::DegenerateMetric((0..m).collect()))?;
            if m == 3 {
                let pairs = [(1, 2), (0, 2), (0, 1)];
                let fracs: Vec<ExactReal> =
                    pairs.iter().map(|&(i, j)| dihedral(&w[i][j], &w[i][i], &w[j][j])).collect();
                return Ok(SolidAngle::exact(girard(&fracs), Method::Girard));
            }
            // generators are the rows of the Cholesky factor; the inward facet
            // normals are the dual basis w_i = Σ_j W_ij v_j
            let gf: Vec<Vec<f64>> = g.iter().map(|r| r.iter().map(to_f64).collect()).collect();
            let l = cholesky(&gf).ok_or(GeometryError::DegenerateMetric((0..m).collect()))?;
            let normals: Vec<Vec<f64>> = (0..m)
                .map(|i| (0..m).map(|c| (0..m).map(|j| to_f64(&w[i][j]) * l[j].get(c).copied().unwrap_or(0.0)).sum()).collect())
                .collect();
            monte_carlo(&normals, m, opts)
        }
    }
}

/// 𝒲 of a simplicial cone with Gram matrix `g`: the dual cone is spanned by
/// the negated dual basis, whose Gram matrix is `g⁻¹`.
pub fn gram_dual_volume(g: &[QVec], opts: McOptions) -> Result<SolidAngle, ConeInvariantError> {
    if g.is_empty() {
        return gram_volume(g, opts);
    }
    let w = inverse(g).ok_or(GeometryError::DegenerateMetric((0..g.len()).collect()))?;
    gram_volume(&w, opts)
}

/// 𝒲 of the union of the closed conical simplices of a conical complex:
/// the closed cell τ enters with coefficient `Σ_{σ ⊇ τ} (-1)^(|σ|-|τ|)`.
pub fn complex_dual_volume(cc: &ConicalComplex, opts: McOptions) -> Result<SolidAngle, ConeInvariantError> {
    let n = cc.cells.len();
    let mut coef = vec![0i64; n];
    for s in 0..n {
        for t in cc.faces_of(s) {
            let d = cc.cells[s].dim() - cc.cells[t].dim();
            coef[t] += if d.is_multiple_of(2) { 1 } else { -1 };
        }
    }
    let mut acc = SolidAngle::zero();
    for (cell, c) in cc.cells.iter().zip(coef) {
        if c != 0 {
            acc.accumulate(&gram_dual_volume(&cell.gram, opts)?, &BigInt::from(c));
        }
    }
    Ok(acc)
}

/// Convenience: the exact rational value of a solid angle, when it has one.
pub fn as_rational(a: &SolidAngle) -> Option<Rational> {
    a.value.as_rational()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::{ivec, q};
    use crate::exact_geometry::AbstractComplex;

    fn exact(a: &SolidAngle) -> Rational {
        as_rational(a).unwrap_or_else(|| panic!("not rational: {:?}", a.value))
    }

    fn opts() -> McOptions {
        McOptions { samples: 100_000, seed: 3 }
    }

    #[test]
    fn line_table() {
        let d = ConeElement::cone(&Cone::orthant(1, &[0]));
        let s = ConeElement::cone(&Cone::whole(1));
        let t = ConeElement::cone(&Cone::origin(1));
        let dp = d.sub(&t);
        assert_eq!(exact(&conical_volume(&d, opts()).unwrap()), qfrac(1, 2));
        assert_eq!(exact(&conical_volume(&t, opts()).unwrap()), q(0));
        assert_eq!(exact(&conical_volume(&s, opts()).unwrap()), q(1));
        assert_eq!(exact(&dual_volume(&t, opts()).unwrap()), q(1));
        assert_eq!(exact(&dual_volume(&d, opts()).unwrap()), qfrac(1, 2));
        assert_eq!(exact(&dual_volume(&s, opts()).unwrap()), q(0));
        assert_eq!(exact(&dual_volume(&dp, opts()).unwrap()), qfrac(-1, 2));
    }

    #[test]
    fn octant_and_sector() {
        let o = Cone::orthant(3, &[0, 1, 2]);
        assert_eq!(exact(&cone_volume(&o, &Subspace::full(3), opts()).unwrap()), qfrac(1, 8));
        assert_eq!(exact(&cone_dual_volume(&o, opts()).unwrap()), qfrac(1, 8));
        // 60 degree sector
        let sec = Cone::from_generators(2, &[ivec(&[2, 0]), ivec(&[1, 1])], &[]);
        let a = cone_volume(&sec, &Subspace::full(2), opts()).unwrap();
        assert!((a.to_f64() - 1.0 / 8.0).abs() < 1e-15);
        let hp = Cone::from_hrep(3, &[], &[ivec(&[0, 0, 1])]);
        assert_eq!(exact(&cone_volume(&hp, &Subspace::full(3), opts()).unwrap()), qfrac(1, 2));
        // wedge of angle π/2 times a line
        let w = Cone::from_generators(3, &[ivec(&[1, 0, 0]), ivec(&[0, 1, 0])], &[ivec(&[0, 0, 1])]);
        assert_eq!(exact(&cone_volume(&w, &Subspace::full(3), opts()).unwrap()), qfrac(1, 4));
    }

    #[test]
    fn square_pyramid_quarter() {
        // the cone from a cube's center over one face: 1/6
        let c = Cone::from_generators(
            3,
            &[ivec(&[1, 1, 1]), ivec(&[1, -1, 1]), ivec(&[-1, 1, 1]), ivec(&[-1, -1, 1])],
            &[],
        );
        let a = cone_volume(&c, &Subspace::full(3), opts()).unwrap();
        assert!((a.to_f64() - 1.0 / 6.0).abs() < 1e-12, "{}", a.to_f64());
    }

    #[test]
    fn gram_matches_coordinates() {
        let rays = [ivec(&[1, 0, 0]), ivec(&[1, 2, 0]), ivec(&[1, 1, 3])];
        let c = Cone::from_generators(3, &rays, &[]);
        let g: Vec<QVec> =
            rays.iter().map(|a| rays.iter().map(|b| dot_q(&to_q(a), &to_q(b))).collect()).collect();
        let x = cone_volume(&c, &Subspace::full(3), opts()).unwrap().to_f64();
        let y = gram_volume(&g, opts()).unwrap().to_f64();
        assert!((x - y).abs() < 1e-12);
        let xd = cone_dual_volume(&c, opts()).unwrap().to_f64();
        let yd = gram_dual_volume(&g, opts()).unwrap().to_f64();
        assert!((xd - yd).abs() < 1e-12);
    }

    #[test]
    fn four_dimensional_orthant_estimate() {
        let o = Cone::orthant(4, &[0, 1, 2, 3]);
        let a = cone_volume(&o, &Subspace::full(4), opts()).unwrap();
        assert_eq!(a.method, Method::MonteCarlo);
        assert!((a.to_f64() - 1.0 / 16.0).abs() <= a.half_width);
        let g: Vec<QVec> = (0..4).map(|i| (0..4).map(|j| q(i64::from(i == j))).collect()).collect();
        let b = gram_volume(&g, opts()).unwrap();
        assert!((b.to_f64() - 1.0 / 16.0).abs() <= b.half_width);
        assert!(cone_volume(&o, &Subspace::full(4), McOptions { samples: 0, seed: 0 }).is_err());
    }

    #[test]
    fn cube_corner_germ() {
        // vertex of the boundary of a cube: three squares, total angle 3π/2
        let k = AbstractComplex::new(
            &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1]],
            crate::exact_geometry::abstract_complex::sq_lengths(&[
                (0, 1, q(1)),
                (0, 2, q(1)),
                (0, 3, q(1)),
                (1, 2, q(2)),
                (2, 3, q(2)),
                (1, 3, q(2)),
            ]),
        )
        .unwrap();
        let g = k.germ_cone(0).unwrap();
        assert_eq!(exact(&complex_dual_volume(&g, opts()).unwrap()), qfrac(1, 4));
    }
}
