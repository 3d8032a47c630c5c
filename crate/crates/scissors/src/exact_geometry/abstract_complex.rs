//! Abstract Euclidean simplicial complexes given by squared edge lengths.

use super::complex::SimplicialComplex;
use super::linalg::*;
use super::polytope::{reduce_sqrt, ScaledSqrt};
use super::GeometryError;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// A simplicial complex whose simplices carry a Euclidean metric determined by
/// squared edge lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct AbstractComplex {
    complex: SimplicialComplex,
    sq_lengths: BTreeMap<(usize, usize), Rational>,
}

/// Conical simplex spanned by edge vectors with a rational Gram matrix. The
/// `labels` identify the generators inside the ambient abstract complex.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicalSimplex {
    pub labels: Vec<usize>,
    pub gram: Vec<QVec>,
}

impl ConicalSimplex {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Face spanned by the generators at the given positions.
    pub fn face(&self, positions: &[usize]) -> ConicalSimplex {
        ConicalSimplex {
            labels: positions.iter().map(|&i| self.labels[i]).collect(),
            gram: positions
                .iter()
                .map(|&i| positions.iter().map(|&j| self.gram[i][j].clone()).collect())
                .collect(),
        }
    }
}

/// Union of conical simplices glued along common faces (every face present).
#[derive(Clone, Debug, PartialEq)]
pub struct ConicalComplex {
    pub cells: Vec<ConicalSimplex>,
}

impl ConicalComplex {
    /// Faces of `cell` listed as indices into `cells`.
    pub fn faces_of(&self, cell: usize) -> Vec<usize> {
        let lab = &self.cells[cell].labels;
        (0..self.cells.len())
            .filter(|&j| self.cells[j].labels.iter().all(|l| lab.contains(l)))
            .collect()
    }
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl AbstractComplex {
    /// `maximal` simplices on integer labels; `sq_lengths` keyed by unordered
    /// vertex pairs.
    pub fn new(maximal: &[Vec<usize>], sq_lengths: BTreeMap<(usize, usize), Rational>) -> Result<Self, GeometryError> {
        let complex = SimplicialComplex::from_maximal(maximal);
        let mut lens = BTreeMap::new();
        for e in complex.of_dim(1) {
            let key = edge(e[0], e[1]);
            let l = sq_lengths
                .get(&key)
                .or_else(|| sq_lengths.get(&(key.1, key.0)))
                .ok_or_else(|| GeometryError::InvalidComplex(format!("missing length for edge {}-{}", e[0], e[1])))?;
            if !l.is_positive() {
                return Err(GeometryError::DegenerateMetric(e.clone()));
            }
            lens.insert(key, l.clone());
        }
        let k = AbstractComplex { complex, sq_lengths: lens };
        for s in k.complex.maximal() {
            k.check_simplex(&s)?;
        }
        Ok(k)
    }

    /// Certifies a nondegenerate embedding: all leading principal minors of the
    /// Gram matrix at the first vertex are positive (equivalently, the
    /// Cayley-Menger determinants of the initial faces have the right sign).
    fn check_simplex(&self, s: &[usize]) -> Result<(), GeometryError> {
        let g = self.gram_at(s[0], &s[1..]);
        for k in 1..=g.len() {
            let minor: Vec<QVec> = g[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !det(&minor).is_positive() {
                return Err(GeometryError::DegenerateMetric(s.to_vec()));
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn sq_length(&self, a: usize, b: usize) -> Rational {
        if a == b {
            return Rational::zero();
        }
        self.sq_lengths[&edge(a, b)].clone()
    }

    /// Gram matrix of the edge vectors from `v` to each of `others`.
    pub fn gram_at(&self, v: usize, others: &[usize]) -> Vec<QVec> {
        others
            .iter()
            .map(|&i| {
                others
                    .iter()
                    .map(|&j| (self.sq_length(v, i) + self.sq_length(v, j) - self.sq_length(i, j)) / q(2))
                    .collect()
            })
            .collect()
    }

    /// k-volume of a simplex with k+1 vertices; 1 for a vertex.
    pub fn volume(&self, s: &[usize]) -> ScaledSqrt {
        let k = s.len() - 1;
        if k == 0 {
            return ScaledSqrt::rational(q(1));
        }
        let g = self.gram_at(s[0], &s[1..]);
        let fact: BigInt = (1..=k).map(BigInt::from).product();
        let (coef, radicand) = reduce_sqrt(Rational::from_integer(BigInt::from(1)) / Rational::from_integer(fact), det(&g));
        ScaledSqrt { coef, radicand }
    }

    /// Normal conical complex ν(σ, K): for each simplex τ ⊇ σ, the conical
    /// simplex spanned by the edges from σ to τ∖σ projected orthogonally off
    /// the span of σ (Gram matrix via a Schur complement).
    pub fn normal_complex(&self, sigma: &[usize]) -> Result<ConicalComplex, GeometryError> {
        let mut sigma = sigma.to_vec();
        sigma.sort();
        if !self.complex.contains(&sigma) {
            return Err(GeometryError::NotContained(format!("{sigma:?} is not a simplex")));
        }
        let base = sigma[0];
        let s_rest: Vec<usize> = sigma[1..].to_vec();
        let mut cells = vec![ConicalSimplex { labels: vec![], gram: vec![] }];
        for tau in self.complex.cofaces(&sigma) {
            let extra: Vec<usize> = tau.iter().copied().filter(|v| !sigma.contains(v)).collect();
            let mut all = s_rest.clone();
            all.extend(extra.iter().copied());
            let g = self.gram_at(base, &all);
            let k = s_rest.len();
            let gram = if k == 0 {
                g
            } else {
                let gss: Vec<QVec> = g[..k].iter().map(|r| r[..k].to_vec()).collect();
                let inv = inverse(&gss).ok_or_else(|| GeometryError::DegenerateMetric(sigma.clone()))?;
                let m = extra.len();
                (0..m)
                    .map(|i| {
                        (0..m)
                            .map(|j| {
                                let mut v = g[k + i][k + j].clone();
                                for a in 0..k {
                                    for b in 0..k {
                                        v -= &g[k + i][a] * &inv[a][b] * &g[b][k + j];
                                    }
                                }
                                v
                            })
                            .collect()
                    })
                    .collect()
            };
            cells.push(ConicalSimplex { labels: extra, gram });
        }
        cells.sort_by(|a, b| (a.labels.len(), &a.labels).cmp(&(b.labels.len(), &b.labels)));
        Ok(ConicalComplex { cells })
    }

    /// Germ at a vertex as a conical complex.
    pub fn germ_cone(&self, v: usize) -> Result<ConicalComplex, GeometryError> {
        self.normal_complex(&[v])
    }

    /// Floating-point coordinates of one simplex via Cholesky factorization of
    /// its Gram matrix at the first vertex (first vertex at the origin).
    pub fn embed_simplex(&self, s: &[usize]) -> Result<Vec<Vec<f64>>, GeometryError> {
        let g: Vec<Vec<f64>> = self.gram_at(s[0], &s[1..]).iter().map(|r| r.iter().map(to_f64).collect()).collect();
        let l = cholesky(&g).ok_or_else(|| GeometryError::DegenerateMetric(s.to_vec()))?;
        let k = g.len();
        let mut pts = vec![vec![0.0; k]];
        pts.extend(l.into_iter().map(|row| {
            let mut r = row;
            r.resize(k, 0.0);
            r
        }));
        Ok(pts)
    }
}

/// Lower-triangular Cholesky factor rows, `None` unless positive definite.
pub fn cholesky(g: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = g.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = g[i][i] - s;
                if d <= 0.0 {
                    return None;
                }
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (g[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

/// Builds squared-length maps from `(a, b, sq)` triples.
pub fn sq_lengths(entries: &[(usize, usize, Rational)]) -> BTreeMap<(usize, usize), Rational> {
    entries.iter().map(|(a, b, l)| (edge(*a, *b), l.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_triangle() -> AbstractComplex {
        AbstractComplex::new(&[vec![0, 1, 2]], sq_lengths(&[(0, 1, q(1)), (1, 2, q(1)), (0, 2, q(2))])).unwrap()
    }

    #[test]
    fn gram_and_volume() {
        let t = unit_triangle();
        assert_eq!(t.gram_at(1, &[0, 2]), vec![qvec(&[1, 0]), qvec(&[0, 1])]);
        assert_eq!(t.volume(&[0, 1, 2]), ScaledSqrt::rational(qfrac(1, 2)));
        assert_eq!(t.volume(&[0, 2]), ScaledSqrt { coef: q(1), radicand: q(2) });
    }

    #[test]
    fn degenerate_rejected() {
        let r = AbstractComplex::new(&[vec![0, 1, 2]], sq_lengths(&[(0, 1, q(1)), (1, 2, q(1)), (0, 2, q(4))]));
        assert!(matches!(r, Err(GeometryError::DegenerateMetric(_))));
    }

    #[test]
    fn germ_of_triangle_corner() {
        let t = unit_triangle();
        let g = t.germ_cone(1).unwrap();
        // apex, two rays, one sector
        assert_eq!(g.cells.len(), 4);
        assert_eq!(g.cells[3].gram, vec![qvec(&[1, 0]), qvec(&[0, 1])]);
    }

    #[test]
    fn edge_normal_is_projection() {
        let t = unit_triangle();
        let n = t.normal_complex(&[0, 1]).unwrap();
        assert_eq!(n.cells.len(), 2);
        // vertex 2 projected off edge 0-1 has squared length 1
        assert_eq!(n.cells[1].gram, vec![qvec(&[1])]);
    }

    #[test]
    fn embedding() {
        let t = unit_triangle();
        let p = t.embed_simplex(&[1, 0, 2]).unwrap();
        let d = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
        assert!((d(&p[1], &p[2]) - 2.0).abs() < 1e-12);
    }
}
