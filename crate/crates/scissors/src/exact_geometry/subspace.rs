//! Linear subspaces of Q^n with a canonical basis.

use super::linalg::*;
use num_traits::Zero;

/// A linear subspace of Q^ambient, stored as the rows of its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<QVec>,
}

impl Subspace {
    pub fn span(ambient: usize, vecs: &[QVec]) -> Self {
        let (basis, _) = rref(vecs, ambient);
        Subspace { ambient, basis }
    }

    pub fn span_int(ambient: usize, vecs: &[IVec]) -> Self {
        let q: Vec<QVec> = vecs.iter().map(|v| to_q(v)).collect();
        Self::span(ambient, &q)
    }

    pub fn full(ambient: usize) -> Self {
        let vecs: Vec<QVec> = (0..ambient).map(|i| unit(ambient, i)).collect();
        Self::span(ambient, &vecs)
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    /// Span of the listed coordinate axes.
    pub fn coordinate(ambient: usize, axes: &[usize]) -> Self {
        let vecs: Vec<QVec> = axes.iter().map(|&i| unit(ambient, i)).collect();
        Self::span(ambient, &vecs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    pub fn basis_int(&self) -> Vec<IVec> {
        self.basis.iter().map(|b| primitive_of_q(b)).collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank_q(&rows, self.ambient) == self.dim()
    }

    pub fn contains_int(&self, v: &[num_bigint::BigInt]) -> bool {
        self.contains(&to_q(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn complement(&self) -> Subspace {
        Subspace::span(self.ambient, &nullspace(&self.basis, self.ambient))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.complement().sum(&other.complement()).complement()
    }

    /// Orthogonal projection of `v` onto this subspace.
    pub fn project(&self, v: &[Rational]) -> QVec {
        let off = project_off(v, &self.basis);
        sub_q(v, &off)
    }

    /// An orthogonal basis (Gram-Schmidt without normalization, exact).
    pub fn orthogonal_basis(&self) -> Vec<QVec> {
        let mut out: Vec<QVec> = Vec::new();
        for b in &self.basis {
            let mut v = b.clone();
            for u in &out {
                let f = dot_q(&v, u) / dot_q(u, u);
                v = sub_q(&v, &scale_q(u, &f));
            }
            if !is_zero_q(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Embeds into Q^(before + ambient + after) by zero padding.
    pub fn pad(&self, before: usize, after: usize) -> Subspace {
        let vecs: Vec<QVec> = self
            .basis
            .iter()
            .map(|b| {
                let mut v = vec![Rational::zero(); before];
                v.extend(b.iter().cloned());
                v.extend(std::iter::repeat_n(Rational::zero(), after));
                v
            })
            .collect();
        Subspace::span(self.ambient + before + after, &vecs)
    }

    /// Orthogonal direct sum of two subspaces living in coordinate blocks.
    pub fn product(&self, other: &Subspace) -> Subspace {
        self.pad(0, other.ambient).sum(&other.pad(self.ambient, 0))
    }

    /// Extends `self` (which must lie in `outer`) to a subspace of `outer` of the
    /// requested dimension, adding basis vectors of `outer` greedily.
    pub fn extend_within(&self, outer: &Subspace, target_dim: usize) -> Option<Subspace> {
        if target_dim > outer.dim() || self.dim() > target_dim {
            return None;
        }
        let mut cur = self.clone();
        for b in outer.basis() {
            if cur.dim() == target_dim {
                break;
            }
            if !cur.contains(b) {
                let mut v = cur.basis.clone();
                v.push(b.clone());
                cur = Subspace::span(self.ambient, &v);
            }
        }
        (cur.dim() == target_dim).then_some(cur)
    }
}

pub fn unit(n: usize, i: usize) -> QVec {
    (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_and_intersection() {
        let a = Subspace::span(3, &[qvec(&[1, 1, 0])]);
        let c = a.complement();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&qvec(&[1, -1, 0])));
        assert!(c.contains(&qvec(&[0, 0, 1])));
        let b = Subspace::coordinate(3, &[0, 1]);
        assert_eq!(c.intersect(&b), Subspace::span(3, &[qvec(&[1, -1, 0])]));
        assert_eq!(a.sum(&c), Subspace::full(3));
    }

    #[test]
    fn projection() {
        let a = Subspace::span(2, &[qvec(&[1, 1])]);
        assert_eq!(a.project(&qvec(&[2, 0])), qvec(&[1, 1]));
    }

    #[test]
    fn extension() {
        let a = Subspace::span(3, &[qvec(&[1, 1, 0])]);
        let e = a.extend_within(&Subspace::full(3), 2).unwrap();
        assert_eq!(e.dim(), 2);
        assert!(a.is_subspace_of(&e));
    }
}
