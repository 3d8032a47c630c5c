//! Formal rank-r tensors over Q of exact reals.
//!
//! A term is a rational coefficient times a tuple of slot monomials. Rational
//! factors always sit in the coefficient (Q-multilinearity), so every term
//! whose slots are all `1` lives in the all-ones bucket.

use super::detect_rational;
use super::exact_real::{ExactReal, Monomial};
use crate::exact_geometry::linalg::{format_rational, to_f64, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor {
    rank: usize,
    terms: BTreeMap<Vec<Monomial>, Rational>,
}

/// Numeric normal form under the rationality-detection policy.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericTensor {
    pub rank: usize,
    /// (coefficient, non-rational slot values; rational slots are 1)
    pub terms: Vec<(f64, Vec<f64>)>,
}

impl NumericTensor {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms
            .iter()
            .map(|(c, s)| (c * s.iter().product::<f64>()).abs())
            .fold(0.0, f64::max)
    }
}

impl Tensor {
    pub fn zero(rank: usize) -> Self {
        Tensor { rank, terms: BTreeMap::new() }
    }

    pub fn scalar(rank: usize, q: Rational) -> Self {
        let mut t = Tensor::zero(rank);
        t.add_term(vec![Monomial::one(); rank], q);
        t
    }

    /// `1 ⊗ … ⊗ x ⊗ … ⊗ 1` with `x` in position `slot`.
    pub fn embed(x: &ExactReal, slot: usize, rank: usize) -> Self {
        assert!(slot < rank, "slot out of range");
        let mut t = Tensor::zero(rank);
        for (m, c) in x.terms() {
            let mut key = vec![Monomial::one(); rank];
            key[slot] = m.clone();
            t.add_term(key, c.clone());
        }
        t
    }

    /// `x_0 ⊗ x_1 ⊗ …`.
    pub fn pure(slots: &[ExactReal]) -> Self {
        let rank = slots.len();
        slots
            .iter()
            .enumerate()
            .fold(Tensor::scalar(rank, Rational::one()), |acc, (i, x)| acc.mul(&Tensor::embed(x, i, rank)))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: Vec<Monomial>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the all-ones bucket when that is the only term.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (k, c) = self.terms.iter().next().expect("one term");
                k.iter().all(|m| m.is_one()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        assert_eq!(self.rank, o.rank, "tensor rank mismatch");
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Tensor {
        Tensor { rank: self.rank, terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> Tensor {
        let mut r = Tensor::zero(self.rank);
        for (k, c) in &self.terms {
            r.add_term(k.clone(), c * s);
        }
        r
    }

    /// Slotwise product in the tensor power of the ring.
    pub fn mul(&self, o: &Tensor) -> Tensor {
        assert_eq!(self.rank, o.rank, "tensor rank mismatch");
        let mut r = Tensor::zero(self.rank);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let mut f = c1 * c2;
                let key: Vec<Monomial> = k1
                    .iter()
                    .zip(k2)
                    .map(|(a, b)| {
                        let (g, m) = a.mul(b);
                        f *= g;
                        m
                    })
                    .collect();
                r.add_term(key, f);
            }
        }
        r
    }

    pub fn swap(&self, i: usize, j: usize) -> Tensor {
        let mut r = Tensor::zero(self.rank);
        for (k, c) in &self.terms {
            let mut k = k.clone();
            k.swap(i, j);
            r.add_term(k, c.clone());
        }
        r
    }

    /// `ξ ⊗ η ↦ ξ ⊗ 1 ⊗ η` with the new `1` at position `at`.
    pub fn insert_one(&self, at: usize) -> Tensor {
        let mut r = Tensor::zero(self.rank + 1);
        for (k, c) in &self.terms {
            let mut k = k.clone();
            k.insert(at, Monomial::one());
            r.add_term(k, c.clone());
        }
        r
    }

    /// Multiplies slots `i` and `i + 1` together.
    pub fn contract(&self, i: usize) -> Tensor {
        assert!(i + 1 < self.rank, "contraction index out of range");
        let mut r = Tensor::zero(self.rank - 1);
        for (k, c) in &self.terms {
            let (g, m) = k[i].mul(&k[i + 1]);
            let mut key = k.clone();
            key[i] = m;
            key.remove(i + 1);
            r.add_term(key, c * g);
        }
        r
    }

    /// Re-indexes into a larger rank: slot `s` moves to `positions[s]`, the
    /// other slots of the result are `1`.
    pub fn place(&self, positions: &[usize], rank: usize) -> Tensor {
        assert_eq!(positions.len(), self.rank, "one position per slot");
        let mut r = Tensor::zero(rank);
        for (k, c) in &self.terms {
            let mut key = vec![Monomial::one(); rank];
            for (m, &p) in k.iter().zip(positions) {
                key[p] = m.clone();
            }
            r.add_term(key, c.clone());
        }
        r
    }

    /// The same rational value in another rank; `None` unless this tensor lies
    /// in the all-ones bucket.
    pub fn rerank(&self, rank: usize) -> Option<Tensor> {
        if rank == self.rank {
            return Some(self.clone());
        }
        self.as_rational().map(|q| Tensor::scalar(rank, q))
    }

    pub fn max_abs_value(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| (to_f64(c) * k.iter().map(|m| m.value()).product::<f64>()).abs())
            .fold(0.0, f64::max)
    }

    /// Drops every term whose slot `slot` is rational (the projection to
    /// `… ⊗ (R/Q) ⊗ …` in that slot).
    pub fn kill_rational_slot(&self, slot: usize) -> Tensor {
        let mut r = Tensor::zero(self.rank);
        for (k, c) in &self.terms {
            if !k[slot].is_one() {
                r.add_term(k.clone(), c.clone());
            }
        }
        r
    }

    /// Image under the multiplication map to R, kept exact.
    pub fn collapse_exact(&self) -> ExactReal {
        let mut out = ExactReal::zero();
        for (k, c) in &self.terms {
            let mut f = c.clone();
            let mut m = Monomial::one();
            for s in k {
                let (g, p) = m.mul(s);
                f *= g;
                m = p;
            }
            out = out.add(&ExactReal::from_monomial(m, f));
        }
        out
    }

    pub fn collapse(&self) -> f64 {
        self.collapse_exact().to_f64()
    }

    /// Numeric normal form: each slot value recognized as rational (continued
    /// fractions, `max_den`, `tol`) is moved into the coefficient, tuples with
    /// equal remaining signatures (within `tol`, relative) are merged, and
    /// coefficients with `|c| <= tol` dropped.
    pub fn policy_form(&self, max_den: u64, tol: f64) -> NumericTensor {
        let mut terms: Vec<(f64, Vec<f64>)> = Vec::new();
        for (k, c) in &self.terms {
            let mut coef = to_f64(c);
            let slots: Vec<f64> = k
                .iter()
                .map(|m| {
                    let v = m.value();
                    match detect_rational(v, max_den, tol) {
                        Some(r) => {
                            coef *= to_f64(&r);
                            1.0
                        }
                        None => v,
                    }
                })
                .collect();
            let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * x.abs().max(1.0));
            match terms.iter_mut().find(|(_, s)| close(s, &slots)) {
                Some(t) => t.0 += coef,
                None => terms.push((coef, slots)),
            }
        }
        terms.retain(|(c, _)| c.abs() > tol);
        terms.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        NumericTensor { rank: self.rank, terms }
    }

    /// Raw (coefficient, slot monomial) tuples as strings.
    pub fn raw_tuples(&self) -> Vec<(String, Vec<String>)> {
        self.terms
            .iter()
            .map(|(k, c)| (format_rational(c), k.iter().map(|m| m.to_string()).collect()))
            .collect()
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let slots: Vec<String> = k.iter().map(|m| m.to_string()).collect();
                format!("{}({})", format_rational(c), slots.join(" (x) "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::{q, qfrac};

    #[test]
    fn rational_slots_move_to_all_ones_bucket() {
        let ell = ExactReal::sqrt_rational(&q(2));
        let t = Tensor::pure(&[ExactReal::rational(qfrac(1, 2)), ell.clone()]);
        assert_eq!(t, Tensor::embed(&ell, 1, 2).scale(&qfrac(1, 2)));
        let ones = Tensor::pure(&[ExactReal::int(1), ExactReal::int(3)]);
        assert_eq!(ones.as_rational(), Some(q(3)));
        assert_eq!(ones.collapse(), 3.0);
    }

    #[test]
    fn k2_collapses_to_zero() {
        let a = ExactReal::angle_fraction(&qfrac(1, 9), 1);
        let k = Tensor::embed(&a, 0, 2).sub(&Tensor::embed(&a, 1, 2));
        assert!(!k.is_zero());
        assert!(k.collapse_exact().is_zero());
        assert_eq!(k.swap(0, 1), k.neg());
    }

    #[test]
    fn contract_and_insert() {
        let a = ExactReal::sqrt_rational(&q(3));
        let t = Tensor::pure(&[a.clone(), a.clone(), ExactReal::int(2)]);
        assert_eq!(t.contract(0), Tensor::scalar(2, q(6)));
        assert_eq!(Tensor::pure(&[a.clone(), a.clone()]).insert_one(1), Tensor::pure(&[a.clone(), ExactReal::one(), a]));
    }

    #[test]
    fn policy_detects_numeric_rationals() {
        let t = Tensor::pure(&[ExactReal::numeric(0.25), ExactReal::numeric(2.0f64.sqrt())]);
        let n = t.policy_form(10_000, 1e-12);
        assert_eq!(n.terms.len(), 1);
        assert!((n.terms[0].0 - 0.25).abs() < 1e-15);
        assert_eq!(n.terms[0].1[0], 1.0);
        let z = t.sub(&Tensor::pure(&[ExactReal::int(1), ExactReal::numeric(2.0f64.sqrt())]).scale(&qfrac(1, 4)));
        assert!(z.policy_form(10_000, 1e-12).is_zero());
    }
}
