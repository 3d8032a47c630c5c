//! Closed convex polyhedral cones with canonical generator form.

use super::double_description::{hrep_to_vrep, BitSet};
use super::linalg::*;
use super::subspace::Subspace;
use super::GeometryError;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

/// Irredundant halfspace description: `e·x = 0` for each equation and
/// `f·x >= 0` for each facet normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facets {
    pub equations: Vec<IVec>,
    pub normals: Vec<IVec>,
}

/// A face given by the indices of the extreme rays it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub rays: Vec<usize>,
    pub dim: usize,
}

/// A closed convex cone `L + cone(rays)` in Q^n.
///
/// `lineality` is the primitive-integer scaling of the reduced echelon basis of
/// the largest contained subspace; each ray is reduced modulo that basis,
/// made primitive, and the list is sorted. Two cones are equal as sets iff the
/// stored data agree.
#[derive(Clone)]
pub struct Cone {
    ambient: usize,
    lineality: Vec<IVec>,
    rays: Vec<IVec>,
    facets: Arc<OnceLock<Facets>>,
    faces: Arc<OnceLock<Vec<Face>>>,
}

impl std::fmt::Debug for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cone")
            .field("ambient", &self.ambient)
            .field("lineality", &self.lineality.iter().map(|v| fmt_ivec(v)).collect::<Vec<_>>())
            .field("rays", &self.rays.iter().map(|v| fmt_ivec(v)).collect::<Vec<_>>())
            .finish()
    }
}

fn fmt_ivec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl PartialEq for Cone {
    fn eq(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.lineality == o.lineality && self.rays == o.rays
    }
}
impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.ambient.hash(h);
        self.lineality.hash(h);
        self.rays.hash(h);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Cone {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.ambient, &self.lineality, &self.rays).cmp(&(o.ambient, &o.lineality, &o.rays))
    }
}

impl Cone {
    fn canonical(ambient: usize, lineality: &[IVec], rays: &[IVec]) -> Cone {
        let lq: Vec<QVec> = lineality.iter().map(|v| to_q(v)).collect();
        let (rows, piv) = rref(&lq, ambient);
        let lin: Vec<IVec> = rows.iter().map(|r| primitive_of_q(r)).collect();
        let mut rs: Vec<IVec> = rays
            .iter()
            .map(|r| primitive_of_q(&reduce_by_rref(&to_q(r), &rows, &piv)))
            .filter(|r| !is_zero_i(r))
            .collect();
        rs.sort();
        rs.dedup();
        Cone {
            ambient,
            lineality: lin,
            rays: rs,
            facets: Arc::new(OnceLock::new()),
            faces: Arc::new(OnceLock::new()),
        }
    }

    /// `{x : e·x = 0, a·x >= 0}`.
    pub fn from_hrep(ambient: usize, equations: &[IVec], inequalities: &[IVec]) -> Cone {
        let g = hrep_to_vrep(ambient, equations, inequalities);
        Cone::canonical(ambient, &g.lineality, &g.rays)
    }

    /// The cone generated by `rays` (nonnegative combinations) plus the span of
    /// `lines`. Redundant generators are removed.
    pub fn from_generators(ambient: usize, rays: &[IVec], lines: &[IVec]) -> Cone {
        let neg: Vec<IVec> = rays.iter().map(|r| neg_i(r)).collect();
        let d = hrep_to_vrep(ambient, lines, &neg);
        let dneg: Vec<IVec> = d.rays.iter().map(|r| neg_i(r)).collect();
        let c = hrep_to_vrep(ambient, &d.lineality, &dneg);
        Cone::canonical(ambient, &c.lineality, &c.rays)
    }

    pub fn from_generators_q(ambient: usize, rays: &[QVec], lines: &[QVec]) -> Cone {
        let r: Vec<IVec> = rays.iter().map(|v| primitive_of_q(v)).filter(|v| !is_zero_i(v)).collect();
        let l: Vec<IVec> = lines.iter().map(|v| primitive_of_q(v)).filter(|v| !is_zero_i(v)).collect();
        Cone::from_generators(ambient, &r, &l)
    }

    /// The origin.
    pub fn origin(ambient: usize) -> Cone {
        Cone::canonical(ambient, &[], &[])
    }

    pub fn subspace(s: &Subspace) -> Cone {
        Cone::canonical(s.ambient(), &s.basis_int(), &[])
    }

    pub fn whole(ambient: usize) -> Cone {
        Cone::subspace(&Subspace::full(ambient))
    }

    /// Nonnegative orthant spanned by the listed axes.
    pub fn orthant(ambient: usize, axes: &[usize]) -> Cone {
        let rays: Vec<IVec> = axes
            .iter()
            .map(|&i| (0..ambient).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        Cone::canonical(ambient, &[], &rays)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn lineality(&self) -> &[IVec] {
        &self.lineality
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_subspace(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn dim(&self) -> usize {
        let mut all = self.lineality.clone();
        all.extend(self.rays.iter().cloned());
        rank_i(&all, self.ambient)
    }

    pub fn span(&self) -> Subspace {
        let mut all = self.lineality.clone();
        all.extend(self.rays.iter().cloned());
        Subspace::span_int(self.ambient, &all)
    }

    pub fn lineality_space(&self) -> Subspace {
        Subspace::span_int(self.ambient, &self.lineality)
    }

    pub fn facets(&self) -> &Facets {
        self.facets.get_or_init(|| {
            let neg: Vec<IVec> = self.rays.iter().map(|r| neg_i(r)).collect();
            let d = hrep_to_vrep(self.ambient, &self.lineality, &neg);
            let dual = Cone::canonical(self.ambient, &d.lineality, &d.rays);
            Facets {
                equations: dual.lineality.clone(),
                normals: dual.rays.iter().map(|r| neg_i(r)).collect(),
            }
        })
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let f = self.facets();
        f.equations.iter().all(|e| dot_iq(e, x).is_zero())
            && f.normals.iter().all(|a| !dot_iq(a, x).is_negative())
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.contains(&to_q(x))
    }

    /// Membership in the relative interior.
    pub fn relint_contains(&self, x: &[Rational]) -> bool {
        let f = self.facets();
        f.equations.iter().all(|e| dot_iq(e, x).is_zero())
            && f.normals.iter().all(|a| dot_iq(a, x).is_positive())
    }

    /// A point of the relative interior: the sum of the extreme rays.
    pub fn relint_point(&self) -> QVec {
        let mut p = vec![Rational::zero(); self.ambient];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += Rational::from_integer(y.clone());
            }
        }
        p
    }

    /// Dual cone `{w : w·x <= 0 for x in C}` in the whole ambient space.
    pub fn dual(&self) -> Cone {
        let neg: Vec<IVec> = self.rays.iter().map(|r| neg_i(r)).collect();
        Cone::from_hrep(self.ambient, &self.lineality, &neg)
    }

    /// Dual cone taken inside the subspace `v`, which must contain the cone.
    pub fn dual_in(&self, v: &Subspace) -> Result<Cone, GeometryError> {
        if v.ambient() != self.ambient {
            return Err(GeometryError::DimensionMismatch { expected: self.ambient, found: v.ambient() });
        }
        if !self.span().is_subspace_of(v) {
            return Err(GeometryError::NotContained("cone is not inside the dualizing subspace".into()));
        }
        let mut eqs = self.lineality.clone();
        eqs.extend(v.complement().basis_int());
        let neg: Vec<IVec> = self.rays.iter().map(|r| neg_i(r)).collect();
        Ok(Cone::from_hrep(self.ambient, &eqs, &neg))
    }

    /// Image under `x -> -x`.
    pub fn negate(&self) -> Cone {
        let rays: Vec<IVec> = self.rays.iter().map(|r| neg_i(r)).collect();
        Cone::canonical(self.ambient, &self.lineality, &rays)
    }

    /// Intersection with another cone of the same ambient dimension.
    pub fn intersect(&self, o: &Cone) -> Cone {
        let (f1, f2) = (self.facets(), o.facets());
        let mut eqs = f1.equations.clone();
        eqs.extend(f2.equations.iter().cloned());
        let mut ineqs = f1.normals.clone();
        ineqs.extend(f2.normals.iter().cloned());
        Cone::from_hrep(self.ambient, &eqs, &ineqs)
    }

    /// Intersection with `{a·x >= 0}` (or `= 0` when `equality`).
    pub fn cut(&self, a: &[BigInt], equality: bool) -> Cone {
        let f = self.facets();
        let mut eqs = f.equations.clone();
        let mut ineqs = f.normals.clone();
        if equality {
            eqs.push(a.to_vec());
        } else {
            ineqs.push(a.to_vec());
        }
        Cone::from_hrep(self.ambient, &eqs, &ineqs)
    }

    /// Cartesian product in Q^(n+m).
    pub fn product(&self, o: &Cone) -> Cone {
        let n = self.ambient;
        let m = o.ambient;
        let pad = |v: &IVec, before: usize, after: usize| -> IVec {
            let mut out = vec![BigInt::zero(); before];
            out.extend(v.iter().cloned());
            out.extend(std::iter::repeat_n(BigInt::zero(), after));
            out
        };
        let mut lin: Vec<IVec> = self.lineality.iter().map(|v| pad(v, 0, m)).collect();
        lin.extend(o.lineality.iter().map(|v| pad(v, n, 0)));
        let mut rays: Vec<IVec> = self.rays.iter().map(|v| pad(v, 0, m)).collect();
        rays.extend(o.rays.iter().map(|v| pad(v, n, 0)));
        Cone::canonical(n + m, &lin, &rays)
    }

    /// Image under the linear map with the given rows (an m x n matrix).
    pub fn linear_image(&self, rows: &[QVec]) -> Cone {
        let apply = |v: &IVec| -> QVec { rows.iter().map(|r| dot_iq(v, r)).collect() };
        let m = rows.len();
        let rays: Vec<QVec> = self.rays.iter().map(apply).collect();
        let lines: Vec<QVec> = self.lineality.iter().map(apply).collect();
        Cone::from_generators_q(m, &rays, &lines)
    }

    /// Zero set of each facet over the extreme rays.
    fn facet_zero_sets(&self) -> Vec<BitSet> {
        self.facets()
            .normals
            .iter()
            .map(|f| {
                let mut b = BitSet::new();
                for (j, r) in self.rays.iter().enumerate() {
                    if dot_i(f, r).is_zero() {
                        b.insert(j);
                    }
                }
                b
            })
            .collect()
    }

    /// The complete face lattice, including the cone itself and the lineality
    /// space (the minimal face). Sorted by dimension, then ray indices.
    pub fn faces(&self) -> &[Face] {
        self.faces.get_or_init(|| {
            let zs = self.facet_zero_sets();
            let full = BitSet::full(self.rays.len());
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut queue = VecDeque::new();
            seen.insert(full.iter().collect());
            queue.push_back(full);
            while let Some(s) = queue.pop_front() {
                for z in &zs {
                    let t = s.and(z);
                    let key: Vec<usize> = t.iter().collect();
                    if !seen.contains(&key) {
                        seen.insert(key);
                        queue.push_back(t);
                    }
                }
            }
            let mut faces: Vec<Face> = seen
                .into_iter()
                .map(|rays| {
                    let mut gens = self.lineality.clone();
                    gens.extend(rays.iter().map(|&i| self.rays[i].clone()));
                    let dim = rank_i(&gens, self.ambient);
                    Face { rays, dim }
                })
                .collect();
            faces.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
            faces
        })
    }

    pub fn face_cone(&self, f: &Face) -> Cone {
        let rays: Vec<IVec> = f.rays.iter().map(|&i| self.rays[i].clone()).collect();
        Cone {
            ambient: self.ambient,
            lineality: self.lineality.clone(),
            rays,
            facets: Arc::new(OnceLock::new()),
            faces: Arc::new(OnceLock::new()),
        }
    }

    pub fn face_cones(&self) -> Vec<Cone> {
        self.faces().iter().map(|f| self.face_cone(f)).collect()
    }

    /// Normal cone of the face `sigma`: the orthogonal projection of the cone
    /// onto span(sigma)^⊥.
    pub fn normal_cone(&self, sigma: &Cone) -> Cone {
        let b = independent_subset(
            &sigma
                .lineality
                .iter()
                .chain(sigma.rays.iter())
                .map(|v| to_q(v))
                .collect::<Vec<_>>(),
            self.ambient,
        );
        let rays: Vec<QVec> = self.rays.iter().map(|r| project_off(&to_q(r), &b)).collect();
        let lines: Vec<QVec> = self.lineality.iter().map(|r| project_off(&to_q(r), &b)).collect();
        Cone::from_generators_q(self.ambient, &rays, &lines)
    }

    /// True when `sigma` is a face of this cone.
    pub fn has_face(&self, sigma: &Cone) -> bool {
        self.face_cones().iter().any(|f| f == sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_examples() {
        assert_eq!(Cone::whole(2).dual(), Cone::origin(2));
        let line = Cone::from_generators(2, &[], &[ivec(&[1, 0])]);
        assert_eq!(line.dual(), Cone::from_generators(2, &[], &[ivec(&[0, 1])]));
        let quad = Cone::orthant(2, &[0, 1]);
        assert_eq!(quad.dual(), Cone::from_generators(2, &[ivec(&[-1, 0]), ivec(&[0, -1])], &[]));
    }

    #[test]
    fn double_dual_is_identity() {
        let c = Cone::from_generators(3, &[ivec(&[1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[-1, 0, 1]), ivec(&[1, 1, 3])], &[]);
        assert_eq!(c.dual().dual(), c);
        let h = Cone::from_hrep(3, &[], &[ivec(&[1, 2, 0])]);
        assert_eq!(h.dual().dual(), h);
    }

    #[test]
    fn face_counts() {
        let quad = Cone::orthant(2, &[0, 1]);
        assert_eq!(quad.faces().len(), 4);
        let oct = Cone::orthant(3, &[0, 1, 2]);
        assert_eq!(oct.faces().len(), 8);
        let dims: Vec<usize> = oct.faces().iter().map(|f| f.dim).collect();
        assert_eq!(dims, vec![0, 1, 1, 1, 2, 2, 2, 3]);
        let half = Cone::from_hrep(2, &[], &[ivec(&[0, 1])]);
        assert_eq!(half.faces().len(), 2);
        assert_eq!(Cone::whole(3).faces().len(), 1);
    }

    #[test]
    fn redundant_generators_removed() {
        let c = Cone::from_generators(2, &[ivec(&[1, 0]), ivec(&[1, 1]), ivec(&[0, 1]), ivec(&[2, 0])], &[]);
        assert_eq!(c.rays().len(), 2);
        let h = Cone::from_generators(2, &[ivec(&[1, 0]), ivec(&[-1, 0]), ivec(&[0, 1])], &[]);
        assert_eq!(h.lineality_dim(), 1);
        assert_eq!(h.rays(), &[ivec(&[0, 1])]);
    }

    #[test]
    fn normal_cone_of_ray() {
        let quad = Cone::orthant(2, &[0, 1]);
        let ray = Cone::orthant(2, &[0]);
        assert_eq!(quad.normal_cone(&ray), Cone::orthant(2, &[1]));
        assert_eq!(quad.normal_cone(&Cone::origin(2)), quad);
        assert_eq!(quad.normal_cone(&quad), Cone::origin(2));
    }

    #[test]
    fn dual_inside_subspace() {
        let ray = Cone::orthant(3, &[0]);
        let v = Subspace::coordinate(3, &[0, 1]);
        let d = ray.dual_in(&v).unwrap();
        assert_eq!(d, Cone::from_hrep(3, &[ivec(&[0, 0, 1])], &[ivec(&[-1, 0, 0])]));
        assert!(ray.dual_in(&Subspace::coordinate(3, &[1])).is_err());
    }
}
