//! Polynomials in named indeterminates with tensor coefficients.
//!
//! Coefficients live in the rank-r tensor power of R (rank 1 is R itself, kept
//! as exact reals). `err` is an absolute error bound carried along from
//! numeric inputs such as Monte-Carlo estimates.

use super::exact_real::ExactReal;
use super::tensor::Tensor;
use super::RingError;
use crate::exact_geometry::linalg::Rational;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type VarMonomial = Vec<(String, u32)>;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    rank: usize,
    terms: BTreeMap<VarMonomial, Tensor>,
    err: f64,
}

fn mono_mul(a: &VarMonomial, b: &VarMonomial) -> VarMonomial {
    let mut m: BTreeMap<String, u32> = BTreeMap::new();
    for (v, e) in a.iter().chain(b) {
        *m.entry(v.clone()).or_insert(0) += e;
    }
    m.into_iter().collect()
}

fn mono_degree(m: &VarMonomial) -> u32 {
    m.iter().map(|(_, e)| e).sum()
}

impl Poly {
    pub fn zero(rank: usize) -> Self {
        Poly { rank, terms: BTreeMap::new(), err: 0.0 }
    }

    pub fn constant(t: Tensor) -> Self {
        let mut p = Poly::zero(t.rank());
        p.add_term(Vec::new(), t);
        p
    }

    pub fn rational(rank: usize, q: Rational) -> Self {
        Poly::constant(Tensor::scalar(rank, q))
    }

    pub fn real(x: &ExactReal) -> Self {
        Poly::constant(Tensor::embed(x, 0, 1))
    }

    /// The indeterminate `name` with coefficient 1.
    pub fn var(name: &str, rank: usize) -> Self {
        let mut p = Poly::zero(rank);
        p.add_term(vec![(name.to_string(), 1)], Tensor::scalar(rank, Rational::one()));
        p
    }

    pub fn with_err(mut self, err: f64) -> Self {
        self.err = err;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VarMonomial, &Tensor)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: VarMonomial, t: Tensor) {
        if t.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old.add(&t),
            None => t,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|t| t.as_rational().is_some())
    }

    /// Moves a polynomial with rational coefficients to another rank.
    pub fn rerank(&self, rank: usize) -> Result<Poly, RingError> {
        if rank == self.rank {
            return Ok(self.clone());
        }
        let mut p = Poly::zero(rank);
        p.err = self.err;
        for (m, t) in &self.terms {
            let t2 = t.rerank(rank).ok_or(RingError::RankMismatch { left: self.rank, right: rank })?;
            p.add_term(m.clone(), t2);
        }
        Ok(p)
    }

    fn unify(&self, o: &Poly) -> Result<(Poly, Poly), RingError> {
        if self.rank == o.rank {
            return Ok((self.clone(), o.clone()));
        }
        if o.is_rational() {
            return Ok((self.clone(), o.rerank(self.rank)?));
        }
        if self.is_rational() {
            return Ok((self.rerank(o.rank)?, o.clone()));
        }
        Err(RingError::RankMismatch { left: self.rank, right: o.rank })
    }

    pub fn add(&self, o: &Poly) -> Result<Poly, RingError> {
        let (mut a, b) = self.unify(o)?;
        for (m, t) in b.terms {
            a.add_term(m, t);
        }
        a.err += b.err;
        Ok(a)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, t)| (m.clone(), t.neg())).collect(),
            err: self.err,
        }
    }

    pub fn sub(&self, o: &Poly) -> Result<Poly, RingError> {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        let mut p = Poly::zero(self.rank);
        for (m, t) in &self.terms {
            p.add_term(m.clone(), t.scale(s));
        }
        p.err = self.err * crate::exact_geometry::linalg::to_f64(s).abs();
        p
    }

    pub fn mul(&self, o: &Poly) -> Result<Poly, RingError> {
        let (a, b) = self.unify(o)?;
        let mut p = Poly::zero(a.rank);
        for (m1, t1) in &a.terms {
            for (m2, t2) in &b.terms {
                p.add_term(mono_mul(m1, m2), t1.mul(t2));
            }
        }
        p.err = a.err * b.magnitude() + b.err * a.magnitude() + a.err * b.err;
        Ok(p)
    }

    pub fn pow(&self, k: u32) -> Result<Poly, RingError> {
        let mut acc = Poly::rational(self.rank, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Sum of absolute values of the coefficients (an error-propagation scale).
    pub fn magnitude(&self) -> f64 {
        self.terms.values().map(|t| t.max_abs_value() * t.terms().count() as f64).sum()
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coefficient(&self, m: &[(&str, u32)]) -> Tensor {
        let mut key: VarMonomial = m.iter().filter(|(_, e)| *e > 0).map(|(v, e)| (v.to_string(), *e)).collect();
        key.sort();
        self.terms.get(&key).cloned().unwrap_or_else(|| Tensor::zero(self.rank))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(mono_degree).max()
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.terms.keys().flat_map(|m| m.iter().map(|(x, _)| x.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Replaces the variable `name` by the polynomial `value`.
    pub fn substitute(&self, name: &str, value: &Poly) -> Result<Poly, RingError> {
        let mut out = Poly::zero(self.rank);
        out.err = self.err;
        for (m, t) in &self.terms {
            let mut rest = Vec::new();
            let mut k = 0;
            for (v, e) in m {
                if v == name {
                    k = *e;
                } else {
                    rest.push((v.clone(), *e));
                }
            }
            let mut term = Poly::zero(self.rank);
            term.add_term(rest, t.clone());
            out = out.add(&term.mul(&value.pow(k)?)?)?;
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient; `rank` is the new coefficient rank.
    pub fn map_coefficients(&self, rank: usize, f: impl Fn(&Tensor) -> Tensor) -> Poly {
        let mut p = Poly::zero(rank);
        for (m, t) in &self.terms {
            let t2 = f(t);
            assert_eq!(t2.rank(), rank, "coefficient map changed rank inconsistently");
            p.add_term(m.clone(), t2);
        }
        p.err = self.err;
        p
    }

    /// Drops every monomial for which `keep` is false.
    pub fn filter_monomials(&self, keep: impl Fn(&VarMonomial) -> bool) -> Poly {
        Poly {
            rank: self.rank,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, t)| (m.clone(), t.clone())).collect(),
            err: self.err,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, t)| {
                let coef = if self.rank <= 1 { t.collapse_exact().to_string() } else { t.to_string() };
                if m.is_empty() {
                    coef
                } else {
                    let vars: Vec<String> = m
                        .iter()
                        .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                        .collect();
                    format!("({})*{}", coef, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::q;

    #[test]
    fn difference_of_squares() {
        let x = Poly::var("x", 1);
        let y = Poly::var("y", 1);
        let lhs = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let rhs = x.pow(2).unwrap().sub(&y.pow(2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.degree(), Some(2));
    }

    #[test]
    fn substitution() {
        let x = Poly::var("x", 1);
        let p = x.pow(3).unwrap().add(&Poly::rational(1, q(2))).unwrap();
        let v = p.substitute("x", &Poly::rational(1, q(-1))).unwrap();
        assert_eq!(v, Poly::rational(1, q(1)));
    }

    #[test]
    fn rational_coefficients_change_rank() {
        let two = Poly::rational(1, q(2));
        let t = Poly::constant(Tensor::pure(&[ExactReal::sqrt_rational(&q(2)), ExactReal::one()]));
        let p = two.mul(&t).unwrap();
        assert_eq!(p.rank(), 2);
        assert!(Poly::real(&ExactReal::sqrt_rational(&q(3))).mul(&t).is_err());
    }
}
