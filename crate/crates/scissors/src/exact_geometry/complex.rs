//! Embedded cell complexes, conical complexes, common refinement and
//! triangulation, plus abstract simplicial complexes.

use super::arrangement::{refine, union_hyperplanes};
use super::cone::Cone;
use super::linalg::*;
use super::polytope::Polytope;
use super::GeometryError;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Combinatorial simplicial complex: every simplex is a sorted list of vertex
/// labels and all faces are present.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn from_maximal(maximal: &[Vec<usize>]) -> Self {
        let mut simplices = BTreeSet::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort();
            s.dedup();
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let f: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                simplices.insert(f);
            }
        }
        SimplicialComplex { simplices }
    }

    /// Boundary of the n-simplex on vertices 0..=n (an (n-1)-sphere).
    pub fn simplex_boundary(n: usize) -> Self {
        let maximal: Vec<Vec<usize>> = (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect()).collect();
        Self::from_maximal(&maximal)
    }

    pub fn simplex(n: usize) -> Self {
        Self::from_maximal(&[(0..=n).collect()])
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    /// Simplices of dimension `k`, sorted.
    pub fn of_dim(&self, k: usize) -> Vec<Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == k + 1).cloned().collect()
    }

    /// Simplices of dimension at most `k`, sorted by dimension then labels.
    pub fn up_to_dim(&self, k: usize) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.simplices.iter().filter(|s| s.len() <= k + 1).cloned().collect();
        v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        v
    }

    pub fn maximal(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.len() == s.len() + 1 && s.iter().all(|v| t.contains(v)))
            })
            .cloned()
            .collect()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.of_dim(0).into_iter().map(|s| s[0]).collect()
    }

    pub fn euler_char(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Simplices strictly containing `s`.
    pub fn cofaces(&self, s: &[usize]) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v)))
            .cloned()
            .collect()
    }

    /// Euler characteristic of the link of `s`.
    pub fn link_euler_char(&self, s: &[usize]) -> i64 {
        self.cofaces(s)
            .iter()
            .map(|t| if (t.len() - s.len()) % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Cone over the complex with a new apex vertex.
    pub fn cone(&self, apex: usize) -> Self {
        let mut maximal: Vec<Vec<usize>> = self
            .maximal()
            .into_iter()
            .map(|mut s| {
                s.push(apex);
                s
            })
            .collect();
        maximal.push(vec![apex]);
        Self::from_maximal(&maximal)
    }
}

/// Coefficients `1 - χ(Lk(σ))` of the closed simplices in a triangulation; the
/// weighted sum of closed simplices is the indicator of the support.
pub fn triangulation_coefficients(k: &SimplicialComplex) -> Vec<(Vec<usize>, i64)> {
    k.simplices()
        .map(|s| (s.clone(), 1 - k.link_euler_char(s)))
        .filter(|(_, c)| *c != 0)
        .collect()
}

/// Pulling triangulation over a face lattice. `faces` lists (generator
/// indices, dimension); a face is a simplex when it has `dim + extra`
/// generators (`extra = 1` for polytopes, `0` for pointed cones). Generators are
/// pulled in the order of `keys`.
pub fn pulling(faces: &[(Vec<usize>, usize)], keys: &[QVec], top: &[usize], top_dim: usize, extra: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    pull(faces, keys, top, top_dim, extra, &mut out);
    for s in out.iter_mut() {
        s.sort();
    }
    out.sort();
    out
}

fn pull(faces: &[(Vec<usize>, usize)], keys: &[QVec], face: &[usize], dim: usize, extra: usize, out: &mut Vec<Vec<usize>>) {
    if face.len() == dim + extra {
        out.push(face.to_vec());
        return;
    }
    let apex = *face.iter().min_by(|&&a, &&b| keys[a].cmp(&keys[b])).expect("nonempty face");
    for (g, gd) in faces {
        if *gd + 1 == dim && g.iter().all(|x| face.contains(x)) && !g.contains(&apex) {
            let mut sub = Vec::new();
            pull(faces, keys, g, *gd, extra, &mut sub);
            for mut s in sub {
                s.push(apex);
                out.push(s);
            }
        }
    }
}

/// Closed convex polytopes forming a polyhedral complex (closed under faces,
/// pairwise intersections are common faces).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    ambient: usize,
    cells: Vec<Polytope>,
}

fn x0_hyperplane(n: usize) -> IVec {
    let mut h = vec![BigInt::zero(); n + 1];
    h[0] = BigInt::from(1);
    h
}

impl CellComplex {
    /// Builds the face closure of `cells` and checks the intersection property.
    pub fn new(ambient: usize, cells: Vec<Polytope>) -> Result<Self, GeometryError> {
        if let Some(c) = cells.iter().find(|c| c.ambient() != ambient) {
            return Err(GeometryError::DimensionMismatch { expected: ambient, found: c.ambient() });
        }
        let k = Self::closure_unchecked(ambient, cells);
        for (i, a) in k.cells.iter().enumerate() {
            for b in &k.cells[i + 1..] {
                let inter = a.homogenized().intersect(b.homogenized());
                if inter.rays().is_empty() {
                    continue;
                }
                let p = Polytope::from_cone_unchecked(ambient, inter);
                if !a.homogenized().has_face(p.homogenized()) || !b.homogenized().has_face(p.homogenized()) {
                    return Err(GeometryError::InvalidComplex(format!("{a:?} and {b:?} meet outside a common face")));
                }
            }
        }
        Ok(k)
    }

    fn closure_unchecked(ambient: usize, cells: Vec<Polytope>) -> Self {
        let mut set = BTreeSet::new();
        for c in cells {
            for f in c.faces() {
                set.insert(f);
            }
        }
        let mut cells: Vec<Polytope> = set.into_iter().collect();
        cells.sort_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
        CellComplex { ambient, cells }
    }

    pub fn from_polytope(p: &Polytope) -> Self {
        Self::closure_unchecked(p.ambient(), vec![p.clone()])
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cells(&self) -> &[Polytope] {
        &self.cells
    }

    pub fn maximal_cells(&self) -> Vec<Polytope> {
        self.cells
            .iter()
            .filter(|c| {
                !self
                    .cells
                    .iter()
                    .any(|d| d.dim() > c.dim() && d.homogenized().has_face(c.homogenized()))
            })
            .cloned()
            .collect()
    }

    fn refined_cells(&self, hs: &[IVec]) -> BTreeMap<Vec<i8>, Cone> {
        let mut out = BTreeMap::new();
        for c in self.maximal_cells() {
            for cell in refine(c.homogenized(), hs, true) {
                out.entry(cell.signs).or_insert(cell.closure);
            }
        }
        out
    }

    fn arrangement_with(&self, other: &CellComplex) -> Vec<IVec> {
        let (a, b) = (self.maximal_cells(), other.maximal_cells());
        let mut hs = union_hyperplanes(a.iter().chain(b.iter()).map(|c| c.homogenized()));
        hs.push(x0_hyperplane(self.ambient));
        hs.sort();
        hs.dedup();
        hs
    }

    /// Exact support comparison through a common arrangement.
    pub fn same_support(&self, other: &CellComplex) -> bool {
        let hs = self.arrangement_with(other);
        let a: BTreeSet<Vec<i8>> = self.refined_cells(&hs).into_keys().collect();
        let b: BTreeSet<Vec<i8>> = other.refined_cells(&hs).into_keys().collect();
        a == b
    }

    /// A common refinement of two complexes with the same support.
    pub fn refine_common(&self, other: &CellComplex) -> Result<CellComplex, GeometryError> {
        if self.ambient != other.ambient {
            return Err(GeometryError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        let hs = self.arrangement_with(other);
        let a = self.refined_cells(&hs);
        let b = other.refined_cells(&hs);
        if a.keys().ne(b.keys()) {
            return Err(GeometryError::DifferentSupport);
        }
        let cells = a
            .into_values()
            .map(|c| Polytope::from_cone_unchecked(self.ambient, c))
            .collect();
        Ok(Self::closure_unchecked(self.ambient, cells))
    }

    /// Every cell of `self` lies in a cell of `other`, and the supports agree.
    pub fn is_refinement_of(&self, other: &CellComplex) -> bool {
        self.cells.iter().all(|c| {
            other
                .cells
                .iter()
                .any(|d| c.vertices().iter().all(|v| d.contains(v)))
        }) && self.same_support(other)
    }

    /// Pulling triangulation with a global lexicographic vertex order. Returns
    /// the vertex coordinates and the simplicial complex on their indices.
    pub fn triangulate(&self) -> (Vec<QVec>, SimplicialComplex) {
        let mut verts: Vec<QVec> = self.cells.iter().filter(|c| c.dim() == 0).map(|c| c.vertices()[0].clone()).collect();
        verts.sort();
        verts.dedup();
        let index: BTreeMap<QVec, usize> = verts.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut maximal = Vec::new();
        for c in self.maximal_cells() {
            let local = c.vertices();
            for s in c.pulling_triangulation() {
                maximal.push(s.iter().map(|&i| index[&local[i]]).collect());
            }
        }
        (verts, SimplicialComplex::from_maximal(&maximal))
    }
}

/// Closed convex cones forming a conical complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeComplex {
    ambient: usize,
    cells: Vec<Cone>,
}

impl ConeComplex {
    pub fn new(ambient: usize, cells: Vec<Cone>) -> Result<Self, GeometryError> {
        if let Some(c) = cells.iter().find(|c| c.ambient() != ambient) {
            return Err(GeometryError::DimensionMismatch { expected: ambient, found: c.ambient() });
        }
        let k = Self::closure_unchecked(ambient, cells);
        for (i, a) in k.cells.iter().enumerate() {
            for b in &k.cells[i + 1..] {
                let inter = a.intersect(b);
                if !a.has_face(&inter) || !b.has_face(&inter) {
                    return Err(GeometryError::InvalidComplex(format!("{a:?} and {b:?} meet outside a common face")));
                }
            }
        }
        Ok(k)
    }

    fn closure_unchecked(ambient: usize, cells: Vec<Cone>) -> Self {
        let mut set = BTreeSet::new();
        for c in cells {
            for f in c.face_cones() {
                set.insert(f);
            }
        }
        let mut cells: Vec<Cone> = set.into_iter().collect();
        cells.sort_by_key(|c| (c.dim(), c.clone()));
        ConeComplex { ambient, cells }
    }

    pub fn from_cone(c: &Cone) -> Self {
        Self::closure_unchecked(c.ambient(), vec![c.clone()])
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cells(&self) -> &[Cone] {
        &self.cells
    }

    pub fn maximal_cells(&self) -> Vec<Cone> {
        self.cells
            .iter()
            .filter(|c| !self.cells.iter().any(|d| d.dim() > c.dim() && d.has_face(c)))
            .cloned()
            .collect()
    }

    fn refined_cells(&self, hs: &[IVec]) -> BTreeMap<Vec<i8>, Cone> {
        let mut out = BTreeMap::new();
        for c in self.maximal_cells() {
            for cell in refine(&c, hs, false) {
                out.entry(cell.signs).or_insert(cell.closure);
            }
        }
        out
    }

    pub fn refine_common(&self, other: &ConeComplex) -> Result<ConeComplex, GeometryError> {
        if self.ambient != other.ambient {
            return Err(GeometryError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        let (ma, mb) = (self.maximal_cells(), other.maximal_cells());
        let hs = union_hyperplanes(ma.iter().chain(mb.iter()));
        let a = self.refined_cells(&hs);
        let b = other.refined_cells(&hs);
        if a.keys().ne(b.keys()) {
            return Err(GeometryError::DifferentSupport);
        }
        Ok(Self::closure_unchecked(self.ambient, a.into_values().collect()))
    }

    /// Conical triangulation: cones with lineality are first split into
    /// pointed pieces along the orthants of their lineality space, then each
    /// pointed piece is pulled with a global lexicographic ray order.
    /// Returns ray vectors and a simplicial complex on their indices; the origin
    /// is the empty simplex and is not listed.
    pub fn triangulate(&self) -> (Vec<IVec>, SimplicialComplex) {
        let pieces: Vec<Cone> = self.maximal_cells().iter().flat_map(pointed_pieces).collect();
        let mut rays: Vec<IVec> = pieces.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        rays.sort();
        rays.dedup();
        let index: BTreeMap<IVec, usize> = rays.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut maximal = Vec::new();
        for c in pieces {
            let keys: Vec<QVec> = c.rays().iter().map(|r| to_q(r)).collect();
            let faces: Vec<(Vec<usize>, usize)> = c.faces().iter().map(|f| (f.rays.clone(), f.dim)).collect();
            let top: Vec<usize> = (0..c.rays().len()).collect();
            for s in pulling(&faces, &keys, &top, c.dim(), 0) {
                if !s.is_empty() {
                    maximal.push(s.iter().map(|&i| index[&c.rays()[i]]).collect());
                }
            }
        }
        (rays, SimplicialComplex::from_maximal(&maximal))
    }
}

/// Splits a cone with lineality `L` into the cones `orthant_s(L) + Q` where `Q`
/// is the projection onto `L^⊥`; these form a conical complex with support the
/// original cone.
pub fn pointed_pieces(c: &Cone) -> Vec<Cone> {
    if c.is_pointed() {
        return vec![c.clone()];
    }
    let lq: Vec<QVec> = c.lineality().iter().map(|v| to_q(v)).collect();
    let q: Vec<QVec> = c.rays().iter().map(|r| project_off(&to_q(r), &lq)).collect();
    let k = lq.len();
    (0..1usize << k)
        .map(|mask| {
            let mut gens = q.clone();
            for (i, l) in lq.iter().enumerate() {
                let s = if mask >> i & 1 == 1 { q_neg(l) } else { l.clone() };
                gens.push(s);
            }
            Cone::from_generators_q(c.ambient(), &gens, &[])
        })
        .collect()
}

fn q_neg(v: &[Rational]) -> QVec {
    v.iter().map(|x| -x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: i64, b: i64) -> Polytope {
        Polytope::from_int_points(1, &[vec![a], vec![b]]).unwrap()
    }

    #[test]
    fn refine_segments() {
        let k1 = CellComplex::new(1, vec![seg(0, 2)]).unwrap();
        let k2 = CellComplex::new(1, vec![seg(0, 1), seg(1, 2)]).unwrap();
        let r = k1.refine_common(&k2).unwrap();
        assert_eq!(r, k2);
        assert_eq!(k1.refine_common(&k1).unwrap(), k1);
        let k3 = CellComplex::new(1, vec![seg(0, 3)]).unwrap();
        assert_eq!(k1.refine_common(&k3), Err(GeometryError::DifferentSupport));
    }

    #[test]
    fn refine_square_splits() {
        let half = |a: &[i64], b: &[i64]| Polytope::cuboid(&[qfrac(a[0], 2), qfrac(a[1], 2)], &[qfrac(b[0], 2), qfrac(b[1], 2)]);
        let v = CellComplex::new(2, vec![half(&[0, 0], &[1, 2]), half(&[1, 0], &[2, 2])]).unwrap();
        let h = CellComplex::new(2, vec![half(&[0, 0], &[2, 1]), half(&[0, 1], &[2, 2])]).unwrap();
        let r = v.refine_common(&h).unwrap();
        assert_eq!(r.maximal_cells().len(), 4);
        assert!(r.is_refinement_of(&v) && r.is_refinement_of(&h));
        let (_, t) = r.triangulate();
        assert_eq!(t.of_dim(2).len(), 8);
        assert_eq!(t.euler_char(), 1);
    }

    #[test]
    fn overlapping_cells_rejected() {
        assert!(CellComplex::new(1, vec![seg(0, 2), seg(1, 3)]).is_err());
    }

    #[test]
    fn link_coefficients_of_triangle() {
        let k = SimplicialComplex::simplex(2);
        let coef: BTreeMap<Vec<usize>, i64> = triangulation_coefficients(&k).into_iter().collect();
        // only the closed triangle itself survives
        assert_eq!(coef.len(), 1);
        assert_eq!(coef[&vec![0, 1, 2]], 1);
        let two = SimplicialComplex::from_maximal(&[vec![0, 1], vec![1, 2]]);
        let c2: BTreeMap<Vec<usize>, i64> = triangulation_coefficients(&two).into_iter().collect();
        assert_eq!(c2[&vec![1]], -1);
    }

    #[test]
    fn cone_triangulation() {
        let plane = ConeComplex::from_cone(&Cone::whole(2));
        let (rays, t) = plane.triangulate();
        assert_eq!(rays.len(), 4);
        assert_eq!(t.of_dim(1).len(), 4);
        let pyr = Cone::from_generators(3, &[ivec(&[1, 0, 1]), ivec(&[-1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[0, -1, 1])], &[]);
        let (_, t) = ConeComplex::from_cone(&pyr).triangulate();
        assert_eq!(t.of_dim(2).len(), 2);
    }
}
