//! Smith normal form over the integers, invariant factors only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "inner dimensions differ");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= k * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, k: &BigInt, from: usize) {
        for j in from..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] -= v;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, k: &BigInt, from: usize) {
        for i in from..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] -= v;
        }
    }

    /// Nonzero invariant factors `d_1 | d_2 | …`, all positive. Their count is
    /// the rank.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut m = self.clone();
        let mut out = Vec::new();
        let mut t = 0;
        while t < m.rows.min(m.cols) {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    let v = &m[(i, j)];
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap_rows(t, bi);
            m.swap_cols(t, bj);
            loop {
                let mut dirty = false;
                for i in t + 1..m.rows {
                    if m[(i, t)].is_zero() {
                        continue;
                    }
                    let qt = m[(i, t)].div_floor(&m[(t, t)]);
                    m.row_axpy(i, t, &qt, t);
                    if !m[(i, t)].is_zero() {
                        m.swap_rows(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..m.cols {
                    if m[(t, j)].is_zero() {
                        continue;
                    }
                    let qt = m[(t, j)].div_floor(&m[(t, t)]);
                    m.col_axpy(j, t, &qt, t);
                    if !m[(t, j)].is_zero() {
                        m.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // pivot must divide the rest of the block
                let p = m[(t, t)].clone();
                let bad = (t + 1..m.rows).find(|&i| (t + 1..m.cols).any(|j| !m[(i, j)].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        let minus_one = BigInt::from(-1);
                        m.row_axpy(t, i, &minus_one, t);
                    }
                    None => break,
                }
            }
            out.push(m[(t, t)].abs());
            t += 1;
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        IntMatrix::from_rows(rows).invariant_factors().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]), vec![1, 1, 2]);
        assert!(IntMatrix::zeros(0, 3).invariant_factors().is_empty());
    }

    #[test]
    fn determinant_is_product_of_factors() {
        // det = 3
        let m = [vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 8]];
        let f = factors(&m);
        assert_eq!(f.iter().product::<i64>(), 3);
    }
}
