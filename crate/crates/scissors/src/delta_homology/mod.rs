//! Homology of `(𝒫_•(X), δ_•)` for small triangulated X, over the subgroup
//! spanned by closed simplices of a triangulation. `𝒫_n` is spanned by the
//! simplices of dimension `<= n` and `δ_n σ = σ − (−1)^n I σ` with
//! `I σ = Σ_{τ ⊆ σ} (−1)^{dim τ} τ`.

mod snf;

pub use snf::IntMatrix;

use crate::exact_geometry::SimplicialComplex;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

pub const MAX_SIMPLICES: usize = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("complex has {0} simplices, the limit is {MAX_SIMPLICES}")]
    TooLarge(usize),
}

/// Closed simplices of a triangulation, ordered by dimension then labels, so
/// the basis of `𝒫_{n−1}` is a prefix of the basis of `𝒫_n`.
#[derive(Clone, Debug)]
pub struct ChainBasis {
    complex: SimplicialComplex,
    simplices: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl ChainBasis {
    pub fn new(complex: SimplicialComplex) -> Result<Self, HomologyError> {
        if complex.len() > MAX_SIMPLICES {
            return Err(HomologyError::TooLarge(complex.len()));
        }
        let simplices = complex.up_to_dim(complex.dim().unwrap_or(0));
        let index = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(ChainBasis { complex, simplices, index })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Rank of `𝒫_n`; `n = -1` gives 0.
    pub fn rank(&self, n: i64) -> usize {
        if n < 0 {
            return 0;
        }
        self.simplices.iter().take_while(|s| s.len() as i64 <= n + 1).count()
    }

    pub fn simplices(&self, n: i64) -> &[Vec<usize>] {
        &self.simplices[..self.rank(n)]
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `I σ` as (basis index, coefficient).
    pub fn involution(&self, sigma: &[usize]) -> Vec<(usize, BigInt)> {
        let k = sigma.len();
        (1u64..(1u64 << k))
            .map(|mask| {
                let tau: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| sigma[i]).collect();
                let sign = if tau.len() % 2 == 1 { 1 } else { -1 };
                (self.index[&tau], BigInt::from(sign))
            })
            .collect()
    }

    /// Matrix of `δ_n: 𝒫_n → 𝒫_{n−1}`. For `n = 0` this has no rows.
    pub fn delta_matrix(&self, n: usize) -> IntMatrix {
        let (rows, cols) = (self.rank(n as i64 - 1), self.rank(n as i64));
        let mut m = IntMatrix::zeros(rows, cols);
        let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        for (j, sigma) in self.simplices(n as i64).iter().enumerate() {
            let mut col: BTreeMap<usize, BigInt> = BTreeMap::new();
            *col.entry(j).or_default() += 1;
            for (i, c) in self.involution(sigma) {
                *col.entry(i).or_default() -= &sign * c;
            }
            for (i, c) in col.into_iter().filter(|(_, c)| !c.is_zero()) {
                assert!(i < rows, "δ_{n} leaves 𝒫_{}", n as i64 - 1);
                m[(i, j)] = c;
            }
        }
        m
    }

    /// A chain of `𝒫_n` as a coefficient vector.
    pub fn chain(&self, n: usize, terms: &[(Vec<usize>, i64)]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank(n as i64)];
        for (s, c) in terms {
            v[self.index[s]] += *c;
        }
        v
    }
}

pub fn apply(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(m.cols, v.len());
    (0..m.rows).map(|i| (0..m.cols).map(|j| &m[(i, j)] * &v[j]).sum()).collect()
}

/// `Z^free ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub n: usize,
    pub free_rank: usize,
    #[serde(serialize_with = "decimal")]
    pub torsion: Vec<BigInt>,
}

fn decimal<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl HomologyGroup {
    /// Number of `Z/2` summands.
    pub fn z2_rank(&self) -> usize {
        self.torsion.iter().filter(|t| **t == BigInt::from(2)).count()
    }

    pub fn killed_by_two(&self) -> bool {
        self.free_rank == 0 && self.torsion.iter().all(|t| *t == BigInt::from(2))
    }
}

/// `h_n = ker δ_n / im δ_{n+1}` from the invariant factors of `δ_{n+1}`.
pub fn homology(basis: &ChainBasis, n: usize) -> HomologyGroup {
    let dn = basis.delta_matrix(n);
    let up = basis.delta_matrix(n + 1).invariant_factors();
    let kernel = dn.cols - dn.invariant_factors().len();
    HomologyGroup { n, free_rank: kernel - up.len(), torsion: up.into_iter().filter(|t| !t.is_one()).collect() }
}

/// `δ_n ∘ δ_{n+1} = 0`.
pub fn delta_squared_vanishes(basis: &ChainBasis, n: usize) -> bool {
    basis.delta_matrix(n).mul(&basis.delta_matrix(n + 1)).is_zero()
}

/// On `𝒫_n ⊂ 𝒫_{n+1}`, `δ_{n+1} = 2 − δ_n`. Every n-cycle ξ therefore has
/// `2ξ = δ_{n+1} ξ`, a boundary.
pub fn two_is_boundary(basis: &ChainBasis, n: usize) -> bool {
    let up = basis.delta_matrix(n + 1);
    let dn = basis.delta_matrix(n);
    (0..basis.rank(n as i64)).all(|j| {
        (0..up.rows).all(|i| {
            let two = if i == j { BigInt::from(2) } else { BigInt::zero() };
            let lower = if i < dn.rows { dn[(i, j)].clone() } else { BigInt::zero() };
            up[(i, j)] == two - lower
        })
    })
}

/// `h_0, …, h_max`.
pub fn homology_table(basis: &ChainBasis, max_n: usize) -> Vec<HomologyGroup> {
    (0..=max_n).map(|n| homology(basis, n)).collect()
}

/// Standard examples: a point, the boundary of a triangle and a triangle.
pub mod examples {
    use super::SimplicialComplex;

    pub fn point() -> SimplicialComplex {
        SimplicialComplex::simplex(0)
    }

    pub fn circle() -> SimplicialComplex {
        SimplicialComplex::simplex_boundary(2)
    }

    pub fn disk() -> SimplicialComplex {
        SimplicialComplex::simplex(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::complex::triangulation_coefficients;

    fn z2(b: &ChainBasis, max: usize) -> Vec<usize> {
        homology_table(b, max).iter().map(HomologyGroup::z2_rank).collect()
    }

    #[test]
    fn point_matrices() {
        let b = ChainBasis::new(examples::point()).unwrap();
        assert_eq!(b.delta_matrix(0), IntMatrix::zeros(0, 1));
        for n in 1..6 {
            let want = if n % 2 == 0 { 0 } else { 2 };
            assert_eq!(b.delta_matrix(n), IntMatrix::from_rows(&[vec![want]]));
        }
    }

    #[test]
    fn segment_delta_is_boundary() {
        let b = ChainBasis::new(SimplicialComplex::simplex(1)).unwrap();
        let d1 = b.delta_matrix(1);
        let edge = b.chain(1, &[(vec![0, 1], 1)]);
        assert_eq!(apply(&d1, &edge), b.chain(0, &[(vec![0], 1), (vec![1], 1)]));
    }

    #[test]
    fn homology_patterns() {
        let point = ChainBasis::new(examples::point()).unwrap();
        assert_eq!(z2(&point, 6), vec![1, 0, 1, 0, 1, 0, 1]);
        let circle = ChainBasis::new(examples::circle()).unwrap();
        assert_eq!(z2(&circle, 6), vec![1; 7]);
        let disk = ChainBasis::new(examples::disk()).unwrap();
        assert_eq!(z2(&disk, 6), z2(&point, 6));
        for b in [&point, &circle, &disk] {
            for n in 0..=6 {
                assert!(homology(b, n).killed_by_two());
                assert!(delta_squared_vanishes(b, n));
                assert!(two_is_boundary(b, n));
            }
        }
    }

    #[test]
    fn closed_manifolds_are_cycles() {
        // the 2-sphere ∂Δ³ and the circle ∂Δ² as chains of themselves
        for (k, d) in [(SimplicialComplex::simplex_boundary(3), 2usize), (examples::circle(), 1)] {
            let b = ChainBasis::new(k.clone()).unwrap();
            let terms: Vec<(Vec<usize>, i64)> = triangulation_coefficients(&k);
            for n in (d..=d + 4).step_by(2) {
                let m = b.chain(n, &terms);
                assert!(apply(&b.delta_matrix(n), &m).iter().all(Zero::is_zero), "n = {n}");
            }
        }
    }

    #[test]
    fn boundary_and_double() {
        let b = ChainBasis::new(SimplicialComplex::simplex(2)).unwrap();
        let tri = vec![0, 1, 2];
        let boundary: Vec<(Vec<usize>, i64)> = vec![
            (vec![0, 1], 1), (vec![0, 2], 1), (vec![1, 2], 1), (vec![0], -1), (vec![1], -1), (vec![2], -1),
        ];
        // n − d odd: δ_{n+1} σ = ∂σ
        for n in [3usize, 5] {
            let got = apply(&b.delta_matrix(n + 1), &b.chain(n + 1, &[(tri.clone(), 1)]));
            assert_eq!(got, b.chain(n, &boundary));
        }
        // n − d even: δ_{n+1} σ = 2σ − ∂σ, the double
        let mut double = vec![(tri.clone(), 2)];
        double.extend(boundary.iter().map(|(s, c)| (s.clone(), -c)));
        for n in [2usize, 4] {
            let got = apply(&b.delta_matrix(n + 1), &b.chain(n + 1, &[(tri.clone(), 1)]));
            assert_eq!(got, b.chain(n, &double));
        }
    }

    #[test]
    fn size_cap() {
        let big = SimplicialComplex::simplex(11);
        assert_eq!(ChainBasis::new(big).unwrap_err(), HomologyError::TooLarge(4095));
    }
}
