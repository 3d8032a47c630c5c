//! Exact rational and integer linear algebra on dense vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, NumAssignRef, NumRef, One, Signed, Zero};
use std::ops::Neg;

pub use crate::{IVec, QVec, Rational};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn ivec(xs: &[i64]) -> IVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_q(v: &[BigInt]) -> QVec {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn dot_i(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_q(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Dot product of an integer vector with a rational one.
pub fn dot_iq(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + y * x)
}

pub fn is_zero_i(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn is_zero_q(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(mut v: IVec) -> IVec {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// Clears denominators and divides by the gcd; direction is preserved.
pub fn primitive_of_q(v: &[Rational]) -> IVec {
    let l = v
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive(
        v.iter()
            .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
            .collect(),
    )
}

/// Makes the first nonzero entry positive.
pub fn sign_normalized(v: IVec) -> IVec {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

pub fn sub_q(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_q(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_q(a: &[Rational], s: &Rational) -> QVec {
    a.iter().map(|x| x * s).collect()
}

pub fn neg_i(a: &[BigInt]) -> IVec {
    a.iter().map(|x| -x).collect()
}

/// Scalars the dense routines below run over. Exact for [`Rational`];
/// `f64` works with exact-zero pivots and is meant for well-conditioned input.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Num + NumRef + NumAssignRef + Neg<Output = Self> {}

impl<T> Field for T where T: Clone + PartialEq + std::fmt::Debug + Num + NumRef + NumAssignRef + Neg<Output = T> {}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y)
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(rows: &[Vec<F>], ncols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = m[r][j].clone() * &f;
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_q<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

pub fn rank_i(rows: &[IVec], ncols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let q: Vec<QVec> = rows.iter().map(|r| to_q(r)).collect();
    rank_q(&q, ncols)
}

/// Eliminates the pivot coordinates of `v` using rows of an RREF.
pub fn reduce_by_rref<F: Field>(v: &[F], rows: &[Vec<F>], pivots: &[usize]) -> Vec<F> {
    let mut out = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
        if !out[p].is_zero() {
            let f = out[p].clone();
            for (o, x) in out.iter_mut().zip(row) {
                *o -= &(x.clone() * &f);
            }
        }
    }
    out
}

/// Basis of {x : row·x = 0 for all rows}.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Selects a maximal linearly independent subset, keeping input order.
pub fn independent_subset<F: Field>(vs: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut out: Vec<Vec<F>> = Vec::new();
    for v in vs {
        let mut trial = out.clone();
        trial.push(v.clone());
        if rank_q(&trial, ncols) == trial.len() {
            out = trial;
        }
    }
    out
}

pub fn gram<F: Field>(vs: &[Vec<F>]) -> Vec<Vec<F>> {
    vs.iter().map(|a| vs.iter().map(|b| dot(a, b)).collect()).collect()
}

pub fn det<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = F::one() / a[c][c].clone();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = a[i][c].clone() * &inv;
                for j in c..n {
                    let t = a[c][j].clone() * &f;
                    a[i][j] -= &t;
                }
            }
        }
    }
    d
}

/// Solves `m x = b` for a square invertible `m`.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = m.len();
    let rows: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&rows, n + 1);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some(r.iter().map(|row| row[n].clone()).collect())
}

pub fn inverse<F: Field>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let rows: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&rows, 2 * n);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(r.iter().map(|row| row[n..].to_vec()).collect())
}

/// Orthogonal projection of `v` onto the orthogonal complement of span(`basis`).
/// `basis` must be linearly independent.
pub fn project_off<F: Field>(v: &[F], basis: &[Vec<F>]) -> Vec<F> {
    if basis.is_empty() {
        return v.to_vec();
    }
    let g = gram(basis);
    let rhs: Vec<F> = basis.iter().map(|b| dot(b, v)).collect();
    let coef = solve(&g, &rhs).expect("projection basis must be independent");
    let mut out = v.to_vec();
    for (c, b) in coef.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o -= &(x.clone() * c);
        }
    }
    out
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().ok()?;
        let d: BigInt = b.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else if let Some((a, b)) = s.split_once('.') {
        let neg = a.starts_with('-');
        let int: BigInt = if a.is_empty() || a == "-" { BigInt::zero() } else { a.parse().ok()? };
        if !b.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let frac: BigInt = if b.is_empty() { BigInt::zero() } else { b.parse().ok()? };
        let den = num_traits::pow(BigInt::from(10), b.len());
        let f = Rational::new(frac, den);
        let i = Rational::from_integer(int);
        Some(if neg { i - f } else { i + f })
    } else {
        Some(Rational::from_integer(s.parse().ok()?))
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Splits `n > 0` as `g^2 * c` with `c` squarefree (trial division up to 10^6,
/// a leftover cofactor that is a perfect square is absorbed).
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive());
    let mut rest = n.clone();
    let mut g = BigInt::one();
    let mut c = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p <= limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            g *= &p;
        }
        if e % 2 == 1 {
            c *= &p;
        }
        p += 1;
    }
    if let Some(r) = exact_sqrt(&rest) {
        g *= r;
    } else {
        c *= rest;
    }
    (g, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_nullspace() {
        let rows = vec![qvec(&[1, 2, 3]), qvec(&[2, 4, 6]), qvec(&[0, 1, 1])];
        let (r, p) = rref(&rows, 3);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.len(), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            assert!(dot_q(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let m = vec![qvec(&[2, 1]), qvec(&[1, 1])];
        assert_eq!(det(&m), q(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![qvec(&[1, -1]), qvec(&[-1, 2])]);
    }

    #[test]
    fn projection_is_orthogonal() {
        let v = qvec(&[1, 2, 3]);
        let b = vec![qvec(&[1, 1, 0])];
        let p = project_off(&v, &b);
        assert!(dot_q(&p, &b[0]).is_zero());
        assert_eq!(p, vec![qfrac(-1, 2), qfrac(1, 2), q(3)]);
    }

    #[test]
    fn float_instantiation() {
        let m = vec![vec![2.0, 1.0], vec![1.0, 1.0]];
        assert_eq!(det(&m), 1.0);
        assert_eq!(solve(&m, &[3.0, 2.0]), Some(vec![1.0, 1.0]));
        assert_eq!(nullspace(&[vec![1.0, -1.0]], 2), vec![vec![1.0, 1.0]]);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6"), Some(qfrac(1, 2)));
        assert_eq!(parse_rational("-0.25"), Some(qfrac(-1, 4)));
        assert_eq!(parse_rational("7"), Some(q(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&qfrac(-6, 4)), "-3/2");
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_split(&BigInt::from(72)), (BigInt::from(6), BigInt::from(2)));
        assert_eq!(squarefree_split(&BigInt::from(49)), (BigInt::from(7), BigInt::from(1)));
        assert_eq!(primitive(ivec(&[4, -6, 0])), ivec(&[2, -3, 0]));
    }
}
