//! Double-description conversion from halfspaces to generators over the integers.
//!
//! Constraints are `a·x >= 0` (inequalities) and `a·x = 0` (equations). The
//! result is a lineality basis plus one generator per extreme ray of the pointed
//! part. Redundant input constraints are fine.

use super::linalg::*;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitSet(Vec<u64>);

impl BitSet {
    pub fn new() -> Self {
        BitSet(Vec::new())
    }

    pub fn with_len(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    pub fn full(n: usize) -> Self {
        let mut b = Self::with_len(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn and(&self, o: &BitSet) -> BitSet {
        let n = self.0.len().min(o.0.len());
        let mut v: Vec<u64> = (0..n).map(|i| self.0[i] & o.0[i]).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        BitSet(v)
    }

    /// `self ⊆ o`
    pub fn is_subset(&self, o: &BitSet) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, w)| w & !o.0.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, w)| {
            (0..64).filter(move |b| w & (1u64 << b) != 0).map(move |b| i * 64 + b)
        })
    }

    fn normalized(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }
}

/// Raw generator description of a cone.
#[derive(Clone, Debug, Default)]
pub struct Generators {
    pub lineality: Vec<IVec>,
    pub rays: Vec<IVec>,
}

/// Incremental double description state. `zeros[i]` records which processed
/// constraints vanish on `rays[i]`.
#[derive(Clone, Debug)]
pub struct DoubleDescription {
    n: usize,
    lineality: Vec<IVec>,
    rays: Vec<IVec>,
    zeros: Vec<BitSet>,
    processed: usize,
}

impl DoubleDescription {
    /// The whole space Q^n.
    pub fn whole(n: usize) -> Self {
        let lineality = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        DoubleDescription { n, lineality, rays: Vec::new(), zeros: Vec::new(), processed: 0 }
    }

    /// Starts from a known generator description whose zero sets are taken with
    /// respect to the listed constraints (all assumed satisfied).
    pub fn from_parts(n: usize, lineality: Vec<IVec>, rays: Vec<IVec>, zeros: Vec<BitSet>, processed: usize) -> Self {
        DoubleDescription { n, lineality, rays, zeros, processed }
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn zeros(&self) -> &[BitSet] {
        &self.zeros
    }

    pub fn lineality(&self) -> &[IVec] {
        &self.lineality
    }

    pub fn processed(&self) -> usize {
        self.processed
    }

    pub fn into_generators(self) -> Generators {
        Generators { lineality: self.lineality, rays: self.rays }
    }

    pub fn add_equation(&mut self, a: &[BigInt]) {
        self.add_inequality(a);
        self.add_inequality(&neg_i(a));
    }

    /// Intersects with `{x : a·x >= 0}`.
    pub fn add_inequality(&mut self, a: &[BigInt]) {
        debug_assert_eq!(a.len(), self.n);
        let idx = self.processed;
        self.processed += 1;
        if let Some(k) = self.lineality.iter().position(|l| !dot_i(a, l).is_zero()) {
            self.cut_lineality(a, k, idx);
            return;
        }
        let vals: Vec<BigInt> = self.rays.iter().map(|r| dot_i(a, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (z, v) in self.zeros.iter_mut().zip(&vals) {
                if v.is_zero() {
                    z.insert(idx);
                }
            }
            return;
        }
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        let pos: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].is_negative()).collect();
        for i in 0..vals.len() {
            if !vals[i].is_negative() {
                let mut z = self.zeros[i].clone();
                if vals[i].is_zero() {
                    z.insert(idx);
                }
                new_rays.push(self.rays[i].clone());
                new_zeros.push(z);
            }
        }
        for &p in &pos {
            for &m in &neg {
                let common = self.zeros[p].and(&self.zeros[m]);
                let blocked = (0..self.rays.len())
                    .any(|r| r != p && r != m && common.is_subset(&self.zeros[r]));
                if blocked {
                    continue;
                }
                let vp = &vals[p];
                let vm = &vals[m];
                let r: IVec = self.rays[m]
                    .iter()
                    .zip(&self.rays[p])
                    .map(|(xm, xp)| vp * xm - vm * xp)
                    .collect();
                let r = primitive(r);
                if is_zero_i(&r) {
                    continue;
                }
                let mut z = common;
                z.insert(idx);
                new_rays.push(r);
                new_zeros.push(z.normalized());
            }
        }
        self.rays = new_rays;
        self.zeros = new_zeros;
    }

    fn cut_lineality(&mut self, a: &[BigInt], k: usize, idx: usize) {
        let l0 = self.lineality.remove(k);
        let v0 = dot_i(a, &l0);
        let s0 = if v0.is_positive() { BigInt::from(1) } else { BigInt::from(-1) };
        let av0 = v0.abs();
        self.lineality = self
            .lineality
            .iter()
            .map(|l| {
                let v = dot_i(a, l);
                primitive(l.iter().zip(&l0).map(|(x, y)| x * &v0 - y * &v).collect())
            })
            .filter(|l| !is_zero_i(l))
            .collect();
        for (r, z) in self.rays.iter_mut().zip(self.zeros.iter_mut()) {
            let v = dot_i(a, r);
            *r = primitive(r.iter().zip(&l0).map(|(x, y)| x * &av0 - y * &v * &s0).collect());
            z.insert(idx);
        }
        let mut z0 = BitSet::new();
        for i in 0..idx {
            z0.insert(i);
        }
        self.rays.push(l0.iter().map(|x| x * &s0).collect());
        self.zeros.push(z0);
    }
}

/// Generators of `{x : e·x = 0 for e in eqs, a·x >= 0 for a in ineqs}`.
pub fn hrep_to_vrep(n: usize, eqs: &[IVec], ineqs: &[IVec]) -> Generators {
    let mut dd = DoubleDescription::whole(n);
    for e in eqs {
        dd.add_equation(e);
    }
    for a in ineqs {
        dd.add_inequality(a);
    }
    dd.into_generators()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrant() {
        let g = hrep_to_vrep(2, &[], &[ivec(&[1, 0]), ivec(&[0, 1])]);
        assert!(g.lineality.is_empty());
        let mut r = g.rays.clone();
        r.sort();
        assert_eq!(r, vec![ivec(&[0, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn half_plane_keeps_line() {
        let g = hrep_to_vrep(2, &[], &[ivec(&[0, 1])]);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays.len(), 1);
    }

    #[test]
    fn square_pyramid_cone() {
        // cone over the square |x|,|y| <= z
        let ineqs = vec![ivec(&[1, 0, 1]), ivec(&[-1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[0, -1, 1])];
        let g = hrep_to_vrep(3, &[], &ineqs);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 4);
        for r in &g.rays {
            assert!(r.iter().all(|x| x.abs() == BigInt::from(1)));
        }
    }

    #[test]
    fn redundant_and_equations() {
        let ineqs = vec![ivec(&[1, 0, 0]), ivec(&[2, 0, 0]), ivec(&[1, 1, 0])];
        let g = hrep_to_vrep(3, &[ivec(&[0, 0, 1])], &ineqs);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 2);
    }

    #[test]
    fn bitset_ops() {
        let mut a = BitSet::new();
        a.insert(3);
        a.insert(70);
        let mut b = BitSet::new();
        b.insert(70);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.and(&b).iter().collect::<Vec<_>>(), vec![70]);
        assert_eq!(a.count(), 2);
    }
}
