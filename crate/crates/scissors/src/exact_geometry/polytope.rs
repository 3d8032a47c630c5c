//! Convex polytopes, stored as pointed cones over `{1} x P` in Q^(n+1).

use super::cone::{Cone, Face};
use super::linalg::*;
use super::subspace::Subspace;
use super::GeometryError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// `coef * sqrt(radicand)` with rational data, `radicand >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSqrt {
    pub coef: Rational,
    pub radicand: Rational,
}

impl ScaledSqrt {
    pub fn rational(coef: Rational) -> Self {
        ScaledSqrt { coef, radicand: Rational::one() }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coef) * to_f64(&self.radicand).sqrt()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polytope {
    ambient: usize,
    cone: Cone,
}

impl std::fmt::Debug for Polytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vs: Vec<String> = self
            .vertices()
            .iter()
            .map(|v| {
                let p: Vec<String> = v.iter().map(format_rational).collect();
                format!("({})", p.join(","))
            })
            .collect();
        write!(f, "Polytope[{}]", vs.join(" "))
    }
}

/// `(a, b)`: the affine function `a·x − b`.
pub type Affine = (QVec, Rational);

impl PartialOrd for Polytope {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Polytope {
    fn cmp(&self, o: &Self) -> Ordering {
        self.cone.cmp(&o.cone)
    }
}

fn homogenize(v: &[Rational]) -> IVec {
    let mut h = vec![Rational::one()];
    h.extend(v.iter().cloned());
    primitive_of_q(&h)
}

impl Polytope {
    pub fn from_points(ambient: usize, points: &[QVec]) -> Result<Polytope, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::Empty);
        }
        if let Some(p) = points.iter().find(|p| p.len() != ambient) {
            return Err(GeometryError::DimensionMismatch { expected: ambient, found: p.len() });
        }
        let rays: Vec<IVec> = points.iter().map(|p| homogenize(p)).collect();
        Ok(Polytope { ambient, cone: Cone::from_generators(ambient + 1, &rays, &[]) })
    }

    pub fn from_int_points(ambient: usize, points: &[Vec<i64>]) -> Result<Polytope, GeometryError> {
        let q: Vec<QVec> = points.iter().map(|p| qvec(p)).collect();
        Polytope::from_points(ambient, &q)
    }

    /// `{x : a_i·x <= b_i}`; errors when empty or unbounded.
    pub fn from_hrep(ambient: usize, a: &[QVec], b: &[Rational]) -> Result<Polytope, GeometryError> {
        let mut ineqs: Vec<IVec> = a
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut h = vec![bi.clone()];
                h.extend(row.iter().map(|x| -x));
                primitive_of_q(&h)
            })
            .collect();
        let mut x0 = vec![BigInt::zero(); ambient + 1];
        x0[0] = BigInt::one();
        ineqs.push(x0);
        let cone = Cone::from_hrep(ambient + 1, &[], &ineqs);
        if cone.rays().is_empty() {
            return Err(GeometryError::Empty);
        }
        if !cone.is_pointed() || cone.rays().iter().any(|r| !r[0].is_positive()) {
            return Err(GeometryError::Unbounded);
        }
        Ok(Polytope { ambient, cone })
    }

    /// Axis-parallel box with the given side intervals.
    pub fn cuboid(lo: &[Rational], hi: &[Rational]) -> Polytope {
        let n = lo.len();
        let pts: Vec<QVec> = (0..1usize << n)
            .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() }).collect())
            .collect();
        Polytope::from_points(n, &pts).expect("box is nonempty")
    }

    pub fn unit_cube(n: usize) -> Polytope {
        Polytope::cuboid(&vec![q(0); n], &vec![q(1); n])
    }

    pub fn point(p: &[Rational]) -> Polytope {
        Polytope::from_points(p.len(), &[p.to_vec()]).expect("point")
    }

    pub fn from_cone_unchecked(ambient: usize, cone: Cone) -> Polytope {
        Polytope { ambient, cone }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn homogenized(&self) -> &Cone {
        &self.cone
    }

    pub fn dim(&self) -> usize {
        self.cone.dim() - 1
    }

    pub fn vertices(&self) -> Vec<QVec> {
        self.cone
            .rays()
            .iter()
            .map(|r| {
                let d = Rational::from_integer(r[0].clone());
                r[1..].iter().map(|x| Rational::from_integer(x.clone()) / &d).collect()
            })
            .collect()
    }

    /// Barycenter of the vertices, a relative-interior point.
    pub fn barycenter(&self) -> QVec {
        let vs = self.vertices();
        let k = Rational::from_integer(BigInt::from(vs.len()));
        let mut c = vec![Rational::zero(); self.ambient];
        for v in &vs {
            c = add_q(&c, v);
        }
        scale_q(&c, &k.recip())
    }

    /// Direction space of the affine hull.
    pub fn direction(&self) -> Subspace {
        let vs = self.vertices();
        let diffs: Vec<QVec> = vs[1..].iter().map(|v| sub_q(v, &vs[0])).collect();
        Subspace::span(self.ambient, &diffs)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let mut h = vec![Rational::one()];
        h.extend(x.iter().cloned());
        self.cone.contains(&h)
    }

    pub fn relint_contains(&self, x: &[Rational]) -> bool {
        let mut h = vec![Rational::one()];
        h.extend(x.iter().cloned());
        self.cone.relint_contains(&h)
    }

    /// Halfspaces `(a, b)` meaning `a·x <= b`, plus affine equations `(c, d)`
    /// meaning `c·x = d`.
    pub fn halfspaces(&self) -> (Vec<Affine>, Vec<Affine>) {
        let f = self.cone.facets();
        let split = |v: &IVec| -> (QVec, Rational) {
            let a: QVec = v[1..].iter().map(|x| -Rational::from_integer(x.clone())).collect();
            (a, Rational::from_integer(v[0].clone()))
        };
        (f.normals.iter().map(split).collect(), f.equations.iter().map(split).collect())
    }

    fn nonempty_faces(&self) -> Vec<&Face> {
        self.cone.faces().iter().filter(|f| !f.rays.is_empty()).collect()
    }

    /// All nonempty faces, including the polytope itself, sorted by dimension.
    pub fn faces(&self) -> Vec<Polytope> {
        self.nonempty_faces()
            .into_iter()
            .map(|f| Polytope { ambient: self.ambient, cone: self.cone.face_cone(f) })
            .collect()
    }

    pub fn faces_with_dims(&self) -> Vec<(Polytope, usize)> {
        self.nonempty_faces()
            .into_iter()
            .map(|f| (Polytope { ambient: self.ambient, cone: self.cone.face_cone(f) }, f.dim - 1))
            .collect()
    }

    pub fn face_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.dim() + 1];
        for f in self.nonempty_faces() {
            c[f.dim - 1] += 1;
        }
        c
    }

    /// Normal cone ν(σ, P) in Q^n: the cone of `v - c` over vertices `v`,
    /// projected orthogonally onto the complement of σ's direction space.
    pub fn normal_cone(&self, sigma: &Polytope) -> Result<Cone, GeometryError> {
        if !self.cone.has_face(&sigma.cone) {
            return Err(GeometryError::NotContained("sigma is not a face".into()));
        }
        Ok(self.germ_cone_projected(sigma))
    }

    /// Same as `normal_cone` without the face check; `sigma` must be a face.
    pub fn germ_cone_projected(&self, sigma: &Polytope) -> Cone {
        let c = sigma.vertices()[0].clone();
        let dir = independent_subset(sigma.direction().basis(), self.ambient);
        let gens: Vec<QVec> = self
            .vertices()
            .iter()
            .map(|v| project_off(&sub_q(v, &c), &dir))
            .collect();
        Cone::from_generators_q(self.ambient, &gens, &[])
    }

    /// Tangent cone at the point `x` (not projected).
    pub fn tangent_cone_at(&self, x: &[Rational]) -> Cone {
        let gens: Vec<QVec> = self.vertices().iter().map(|v| sub_q(v, x)).collect();
        Cone::from_generators_q(self.ambient, &gens, &[])
    }

    pub fn translate(&self, t: &[Rational]) -> Polytope {
        let pts: Vec<QVec> = self.vertices().iter().map(|v| add_q(v, t)).collect();
        Polytope::from_points(self.ambient, &pts).expect("nonempty")
    }

    /// Image under `x -> lambda x`.
    pub fn dilate(&self, lambda: &Rational) -> Polytope {
        let pts: Vec<QVec> = self.vertices().iter().map(|v| scale_q(v, lambda)).collect();
        Polytope::from_points(self.ambient, &pts).expect("nonempty")
    }

    /// Image under `x -> A x + b`, `A` given by rows.
    pub fn affine_image(&self, rows: &[QVec], shift: &[Rational]) -> Polytope {
        let pts: Vec<QVec> = self
            .vertices()
            .iter()
            .map(|v| rows.iter().zip(shift).map(|(r, s)| dot_q(r, v) + s).collect())
            .collect();
        Polytope::from_points(rows.len(), &pts).expect("nonempty")
    }

    pub fn product(&self, o: &Polytope) -> Polytope {
        let mut pts = Vec::new();
        for a in self.vertices() {
            for b in o.vertices() {
                let mut p = a.clone();
                p.extend(b.iter().cloned());
                pts.push(p);
            }
        }
        Polytope::from_points(self.ambient + o.ambient, &pts).expect("nonempty")
    }

    pub fn minkowski_sum(&self, o: &Polytope) -> Result<Polytope, GeometryError> {
        if self.ambient != o.ambient {
            return Err(GeometryError::DimensionMismatch { expected: self.ambient, found: o.ambient });
        }
        let mut pts = Vec::new();
        for a in self.vertices() {
            for b in o.vertices() {
                pts.push(add_q(&a, &b));
            }
        }
        Polytope::from_points(self.ambient, &pts)
    }

    /// Vertex indices (into `vertices()`) of a pulling triangulation. The pulling
    /// order is lexicographic in the vertex coordinates, so triangulations of
    /// cells sharing a face agree on it.
    pub fn pulling_triangulation(&self) -> Vec<Vec<usize>> {
        let verts = self.vertices();
        let faces: Vec<(Vec<usize>, usize)> = self
            .nonempty_faces()
            .into_iter()
            .map(|f| (f.rays.clone(), f.dim - 1))
            .collect();
        let top: Vec<usize> = (0..verts.len()).collect();
        super::complex::pulling(&faces, &verts, &top, self.dim(), 1)
    }

    /// k-dimensional volume, k = dim(P), as `coef * sqrt(radicand)`.
    /// A point has volume 1.
    pub fn volume(&self) -> ScaledSqrt {
        let k = self.dim();
        if k == 0 {
            return ScaledSqrt::rational(Rational::one());
        }
        let basis = independent_subset(self.direction().basis(), self.ambient);
        let g = gram(&basis);
        let verts = self.vertices();
        let mut total = Rational::zero();
        for s in self.pulling_triangulation() {
            let base = &verts[s[0]];
            let coords: Vec<QVec> = s[1..]
                .iter()
                .map(|&i| {
                    let d = sub_q(&verts[i], base);
                    let rhs: QVec = basis.iter().map(|b| dot_q(b, &d)).collect();
                    solve(&g, &rhs).expect("basis gram is invertible")
                })
                .collect();
            total += det(&coords).abs();
        }
        let fact: BigInt = (1..=k).map(BigInt::from).product();
        let coef = total / Rational::from_integer(fact);
        let (coef, radicand) = reduce_sqrt(coef, det(&g));
        ScaledSqrt { coef, radicand }
    }
}

/// Normalizes `c * sqrt(r)` so that `r` is a squarefree integer.
pub fn reduce_sqrt(c: Rational, r: Rational) -> (Rational, Rational) {
    if r.is_zero() || c.is_zero() {
        return (Rational::zero(), Rational::one());
    }
    // sqrt(n/d) = sqrt(n d) / d
    let nd = r.numer() * r.denom();
    let (g, sf) = squarefree_split(&nd);
    let coef = c * Rational::new(g, r.denom().clone());
    (coef, Rational::from_integer(sf))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_faces() {
        let sq = Polytope::unit_cube(2);
        assert_eq!(sq.face_counts(), vec![4, 4, 1]);
        let cube = Polytope::unit_cube(3);
        let c = cube.face_counts();
        assert_eq!(c, vec![8, 12, 6, 1]);
        assert_eq!(c[0] as i64 - c[1] as i64 + c[2] as i64, 2);
    }

    #[test]
    fn redundant_points_dropped() {
        let p = Polytope::from_int_points(2, &[vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert!(p.contains(&qvec(&[1, 1])));
        assert!(!p.relint_contains(&qvec(&[1, 1])));
        assert!(p.relint_contains(&[qfrac(1, 2), qfrac(1, 2)]));
    }

    #[test]
    fn hrep_roundtrip() {
        let a = vec![qvec(&[1, 0]), qvec(&[-1, 0]), qvec(&[0, 1]), qvec(&[0, -1])];
        let b = vec![q(1), q(0), q(1), q(0)];
        assert_eq!(Polytope::from_hrep(2, &a, &b).unwrap(), Polytope::unit_cube(2));
        assert!(matches!(Polytope::from_hrep(2, &a[..2], &b[..2]), Err(GeometryError::Unbounded)));
    }

    #[test]
    fn volumes() {
        assert_eq!(Polytope::unit_cube(3).volume(), ScaledSqrt::rational(q(1)));
        let tri = Polytope::from_int_points(2, &[vec![0, 0], vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(tri.volume(), ScaledSqrt::rational(q(3)));
        // diagonal segment of length sqrt 2
        let seg = Polytope::from_int_points(2, &[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(seg.volume(), ScaledSqrt { coef: q(1), radicand: q(2) });
        let tet = Polytope::from_int_points(3, &[vec![1, 1, 1], vec![1, -1, -1], vec![-1, 1, -1], vec![-1, -1, 1]]).unwrap();
        assert_eq!(tet.volume(), ScaledSqrt::rational(qfrac(8, 3)));
    }

    #[test]
    fn minkowski() {
        let a = Polytope::from_int_points(2, &[vec![0, 0], vec![1, 0]]).unwrap();
        let b = Polytope::from_int_points(2, &[vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(a.minkowski_sum(&b).unwrap(), Polytope::unit_cube(2));
        let t = Polytope::from_int_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let mt = t.dilate(&q(-1));
        assert_eq!(t.minkowski_sum(&mt).unwrap().vertices().len(), 6);
    }

    #[test]
    fn normal_cones_of_square() {
        let sq = Polytope::unit_cube(2);
        let v = Polytope::point(&qvec(&[0, 0]));
        assert_eq!(sq.normal_cone(&v).unwrap(), Cone::orthant(2, &[0, 1]));
        let bottom = Polytope::from_int_points(2, &[vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(sq.normal_cone(&bottom).unwrap(), Cone::orthant(2, &[1]));
        assert_eq!(sq.normal_cone(&sq).unwrap(), Cone::origin(2));
        assert!(sq.normal_cone(&Polytope::point(&qvec(&[5, 5]))).is_err());
    }

    #[test]
    fn triangulation_of_cube() {
        let t = Polytope::unit_cube(3).pulling_triangulation();
        assert!(t.iter().all(|s| s.len() == 4));
        assert_eq!(t.len(), 6);
    }
}
