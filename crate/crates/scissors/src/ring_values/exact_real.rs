//! Exact real numbers as rational combinations of monomials in atoms.
//!
//! Atoms are normalized angles acos(√r)/2π for rational r = cos², square roots
//! of squarefree integers, and opaque numerics. Rational linear relations among
//! distinct atoms are not detected, so structural zero implies zero but not
//! conversely; `to_f64` gives the numeric value for a tolerance check.

use crate::exact_geometry::linalg::{format_rational, squarefree_split, to_f64, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// acos(√c2)/2π with rational 0 < c2 < 1 not in {1/4, 1/2, 3/4}.
    Angle(Rational),
    /// √n for a squarefree integer n > 1.
    Sqrt(BigInt),
    /// An opaque positive real known by its f64 bit pattern.
    Numeric(u64),
}

impl Atom {
    pub fn value(&self) -> f64 {
        match self {
            Atom::Angle(c2) => to_f64(c2).sqrt().acos() / (2.0 * std::f64::consts::PI),
            Atom::Sqrt(n) => to_f64(&Rational::from_integer(n.clone())).sqrt(),
            Atom::Numeric(bits) => f64::from_bits(*bits),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Angle(c2) => write!(f, "ang[{}]", format_rational(c2)),
            Atom::Sqrt(n) => write!(f, "sqrt{}", n),
            Atom::Numeric(b) => write!(f, "num[{:e}]", f64::from_bits(*b)),
        }
    }
}

/// Product of atoms with exponents; at most one `Sqrt` atom, with exponent 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<(Atom, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Monomial(vec![(a, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self) -> f64 {
        self.0.iter().map(|(a, e)| a.value().powi(*e as i32)).product()
    }

    /// Product, returning the rational factor split off by `√a √b`.
    pub fn mul(&self, o: &Monomial) -> (Rational, Monomial) {
        let mut map: BTreeMap<Atom, u32> = BTreeMap::new();
        let mut sqrt = BigInt::one();
        for (a, e) in self.0.iter().chain(o.0.iter()) {
            match a {
                Atom::Sqrt(n) => {
                    for _ in 0..*e {
                        sqrt *= n;
                    }
                }
                _ => *map.entry(a.clone()).or_insert(0) += e,
            }
        }
        let mut factor = Rational::one();
        if !sqrt.is_one() {
            let (g, c) = squarefree_split(&sqrt);
            factor = Rational::from_integer(g);
            if !c.is_one() {
                map.insert(Atom::Sqrt(c), 1);
            }
        }
        (factor, Monomial(map.into_iter().collect()))
    }

    pub fn numeric_atoms(&self) -> impl Iterator<Item = &Atom> {
        self.0.iter().map(|(a, _)| a).filter(|a| matches!(a, Atom::Numeric(_)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(a, e)| if *e == 1 { a.to_string() } else { format!("{a}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactReal {
    terms: BTreeMap<Monomial, Rational>,
}

impl ExactReal {
    pub fn zero() -> Self {
        ExactReal::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::one(), q);
        }
        ExactReal { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let mut e = ExactReal::zero();
        e.add_term(m, c);
        e
    }

    pub fn atom(a: Atom) -> Self {
        Self::from_monomial(Monomial::atom(a), Rational::one())
    }

    /// An opaque real, e.g. a Monte-Carlo estimate or an irrational scale.
    pub fn numeric(x: f64) -> Self {
        if x == 0.0 {
            return Self::zero();
        }
        let a = Self::atom(Atom::Numeric(x.abs().to_bits()));
        if x < 0.0 {
            a.neg()
        } else {
            a
        }
    }

    /// √q for rational q >= 0.
    pub fn sqrt_rational(q: &Rational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            return Self::zero();
        }
        let nd = q.numer() * q.denom();
        let (g, c) = squarefree_split(&nd);
        let coef = Rational::new(g, q.denom().clone());
        if c.is_one() {
            Self::rational(coef)
        } else {
            Self::from_monomial(Monomial::atom(Atom::Sqrt(c)), coef)
        }
    }

    /// `coef * √radicand`.
    pub fn scaled_sqrt(coef: &Rational, radicand: &Rational) -> Self {
        Self::sqrt_rational(radicand).scale(coef)
    }

    /// The angle θ/2π between two vectors, given `cos² θ` and the sign of
    /// `cos θ`.
    pub fn angle_fraction(cos2: &Rational, sign: i8) -> Self {
        let frac = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
        if sign == 0 || cos2.is_zero() {
            return Self::rational(frac(1, 4));
        }
        let base = if cos2.is_one() {
            Self::zero()
        } else if *cos2 == frac(1, 4) {
            Self::rational(frac(1, 6))
        } else if *cos2 == frac(1, 2) {
            Self::rational(frac(1, 8))
        } else if *cos2 == frac(3, 4) {
            Self::rational(frac(1, 12))
        } else {
            Self::atom(Atom::Angle(cos2.clone()))
        };
        if sign > 0 {
            base
        } else {
            Self::rational(frac(1, 2)).sub(&base)
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ExactReal) -> ExactReal {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> ExactReal {
        ExactReal { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &ExactReal) -> ExactReal {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> ExactReal {
        if s.is_zero() {
            return Self::zero();
        }
        ExactReal { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &ExactReal) -> ExactReal {
        let mut r = ExactReal::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let (f, m) = m1.mul(m2);
                r.add_term(m, c1 * c2 * f);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> ExactReal {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(m, c)| to_f64(c) * m.value()).sum()
    }

    /// The value when it is structurally rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn has_numeric_atoms(&self) -> bool {
        self.terms.keys().any(|m| m.numeric_atoms().next().is_some())
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format_rational(c)
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{}*{}", format_rational(c), m)
                }
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
    fn niven_angles_are_rational() {
        assert_eq!(ExactReal::angle_fraction(&qfrac(1, 2), 1).as_rational(), Some(qfrac(1, 8)));
        assert_eq!(ExactReal::angle_fraction(&qfrac(1, 4), -1).as_rational(), Some(qfrac(1, 3)));
        assert_eq!(ExactReal::angle_fraction(&q(0), 0).as_rational(), Some(qfrac(1, 4)));
        assert_eq!(ExactReal::angle_fraction(&q(1), -1).as_rational(), Some(qfrac(1, 2)));
    }

    #[test]
    fn supplementary_angles_cancel() {
        let a = ExactReal::angle_fraction(&qfrac(1, 9), 1);
        let b = ExactReal::angle_fraction(&qfrac(1, 9), -1);
        assert_eq!(a.add(&b).as_rational(), Some(qfrac(1, 2)));
        let v = a.to_f64();
        assert!((v - (1.0f64 / 3.0).acos() / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
    }

    #[test]
    fn square_roots_multiply() {
        let s2 = ExactReal::sqrt_rational(&q(2));
        let s6 = ExactReal::sqrt_rational(&q(6));
        let p = s2.mul(&s6);
        // sqrt 12 = 2 sqrt 3
        assert_eq!(p, ExactReal::scaled_sqrt(&q(2), &q(3)));
        assert_eq!(s2.mul(&s2).as_rational(), Some(q(2)));
        assert_eq!(ExactReal::sqrt_rational(&qfrac(1, 2)), ExactReal::scaled_sqrt(&qfrac(1, 2), &q(2)));
    }

    #[test]
    fn numeric_atoms() {
        let x = ExactReal::numeric(-1.5);
        assert!((x.to_f64() + 1.5).abs() < 1e-15);
        assert!(x.has_numeric_atoms());
        assert!(x.add(&ExactReal::numeric(1.5)).is_zero());
    }
}
