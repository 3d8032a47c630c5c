//! Coefficient rings for invariants: integers, rationals, exact and tolerant
//! reals, polynomials and formal tensor powers of R.

pub mod exact_real;
pub mod poly;
pub mod tensor;

pub use exact_real::{Atom, ExactReal, Monomial};
pub use poly::{Poly, VarMonomial};
pub use tensor::{NumericTensor, Tensor};

use crate::exact_geometry::linalg::{format_rational, to_f64, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("ring variant mismatch: {0}")]
    VariantMismatch(String),
    #[error("tensor rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("ring map not applicable: {0}")]
    BadMap(String),
}

/// Rationality detection used to normalize tensors numerically.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Policy {
    pub max_den: u64,
    pub tol: f64,
}

impl Default for Policy {
    fn default() -> Self {
        Policy { max_den: 10_000, tol: 1e-12 }
    }
}

/// Best rational approximation by continued fractions: the first convergent
/// `p/q` with `q <= max_den` and `|x - p/q| <= tol`.
pub fn detect_rational(x: f64, max_den: u64, tol: f64) -> Option<Rational> {
    assert!(max_den >= 1, "max_den must be positive");
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e18 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= tol {
            return Some(Rational::new(BigInt::from(h2), BigInt::from(k2)));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// A value in one of the supported commutative rings.
#[derive(Clone, Debug, PartialEq)]
pub enum RingValue {
    Int(BigInt),
    Rat(Rational),
    Exact(ExactReal),
    /// A real known to within `tol`.
    Real { value: f64, tol: f64 },
    Poly(Poly),
    Tensor(Tensor),
    Product(Box<RingValue>, Box<RingValue>),
}

/// Ring homomorphisms between coefficient rings, acting on polynomial
/// coefficients (or on variables for `Substitute`).
#[derive(Clone, Debug, PartialEq)]
pub enum RingMap {
    /// Slot `s` of the source goes to `positions[s]` of a rank-`rank` target.
    PlaceSlots { positions: Vec<usize>, rank: usize },
    Swap(usize, usize),
    /// `ξ ⊗ η ↦ ξ ⊗ 1 ⊗ η` with the new slot at the given position.
    InsertOne(usize),
    /// Multiplies slots `i` and `i + 1`.
    Contract(usize),
    /// Multiplication map to R.
    Collapse,
    /// Specializes a variable.
    Substitute(String, Box<RingValue>),
    /// Applies the maps left to right.
    Chain(Vec<RingMap>),
}

impl RingMap {
    /// `a ↦ a` placed in slot `slot` of R^{⊗rank}.
    pub fn embed(slot: usize, rank: usize) -> RingMap {
        RingMap::PlaceSlots { positions: vec![slot], rank }
    }

    pub fn apply(&self, v: &RingValue) -> Result<RingValue, RingError> {
        let p = v.to_poly()?;
        Ok(RingValue::from_poly(self.apply_poly(&p)?))
    }

    pub fn apply_poly(&self, p: &Poly) -> Result<Poly, RingError> {
        let r = p.rank();
        let slot_check = |need: usize| {
            if r < need {
                Err(RingError::BadMap(format!("{self:?} needs rank >= {need}, got {r}")))
            } else {
                Ok(())
            }
        };
        match self {
            RingMap::PlaceSlots { positions, rank } => {
                let p = if p.rank() != positions.len() { p.rerank(positions.len())? } else { p.clone() };
                Ok(p.map_coefficients(*rank, |t| t.place(positions, *rank)))
            }
            RingMap::Swap(i, j) => {
                slot_check(i.max(j) + 1)?;
                Ok(p.map_coefficients(r, |t| t.swap(*i, *j)))
            }
            RingMap::InsertOne(at) => {
                if *at > r {
                    return Err(RingError::BadMap(format!("insert position {at} beyond rank {r}")));
                }
                Ok(p.map_coefficients(r + 1, |t| t.insert_one(*at)))
            }
            RingMap::Contract(i) => {
                slot_check(i + 2)?;
                Ok(p.map_coefficients(r - 1, |t| t.contract(*i)))
            }
            RingMap::Collapse => Ok(p.map_coefficients(1, |t| Tensor::embed(&t.collapse_exact(), 0, 1))),
            RingMap::Substitute(name, value) => p.substitute(name, &value.to_poly()?),
            RingMap::Chain(maps) => maps.iter().try_fold(p.clone(), |acc, m| m.apply_poly(&acc)),
        }
    }
}

impl From<i64> for RingValue {
    fn from(n: i64) -> Self {
        RingValue::Int(BigInt::from(n))
    }
}

impl From<Rational> for RingValue {
    fn from(q: Rational) -> Self {
        RingValue::Rat(q).simplified()
    }
}

impl From<ExactReal> for RingValue {
    fn from(x: ExactReal) -> Self {
        RingValue::Exact(x).simplified()
    }
}

impl RingValue {
    pub fn zero() -> Self {
        RingValue::Int(BigInt::zero())
    }

    pub fn one() -> Self {
        RingValue::Int(BigInt::one())
    }

    pub fn var(name: &str) -> Self {
        RingValue::Poly(Poly::var(name, 1))
    }

    pub fn real(value: f64, tol: f64) -> Self {
        RingValue::Real { value, tol }
    }

    /// Integers and rationals in lowest variant, exact reals that are rational
    /// become rationals.
    pub fn simplified(self) -> Self {
        match self {
            RingValue::Rat(q) if q.is_integer() => RingValue::Int(q.to_integer()),
            RingValue::Exact(x) => match x.as_rational() {
                Some(q) => RingValue::Rat(q).simplified(),
                None => RingValue::Exact(x),
            },
            RingValue::Tensor(t) if t.rank() <= 1 => RingValue::Exact(t.collapse_exact()).simplified(),
            RingValue::Poly(p) => RingValue::from_poly(p),
            other => other,
        }
    }

    /// Constant polynomials become scalars; a nonzero error bound on a scalar
    /// gives a `Real`.
    pub fn from_poly(p: Poly) -> Self {
        let constant = p.terms().all(|(m, _)| m.is_empty());
        if !constant {
            return RingValue::Poly(p);
        }
        let t = p.coefficient(&[]);
        if p.rank() <= 1 {
            let x = t.collapse_exact();
            if p.err() > 0.0 {
                return RingValue::Real { value: x.to_f64(), tol: p.err() };
            }
            return RingValue::Exact(x).simplified();
        }
        if p.err() > 0.0 {
            return RingValue::Poly(p);
        }
        match t.as_rational() {
            Some(q) => RingValue::Rat(q).simplified(),
            None => RingValue::Tensor(t),
        }
    }

    pub fn to_poly(&self) -> Result<Poly, RingError> {
        Ok(match self {
            RingValue::Int(n) => Poly::rational(1, Rational::from_integer(n.clone())),
            RingValue::Rat(q) => Poly::rational(1, q.clone()),
            RingValue::Exact(x) => Poly::real(x),
            RingValue::Real { value, tol } => Poly::real(&ExactReal::numeric(*value)).with_err(*tol),
            RingValue::Poly(p) => p.clone(),
            RingValue::Tensor(t) => Poly::constant(t.clone()),
            RingValue::Product(..) => {
                return Err(RingError::VariantMismatch("product values have no polynomial form".into()))
            }
        })
    }

    fn binary(
        &self,
        o: &RingValue,
        op: &dyn Fn(&Poly, &Poly) -> Result<Poly, RingError>,
        name: &str,
    ) -> Result<RingValue, RingError> {
        match (self, o) {
            (RingValue::Product(a1, b1), RingValue::Product(a2, b2)) => Ok(RingValue::Product(
                Box::new(a1.binary(a2, op, name)?),
                Box::new(b1.binary(b2, op, name)?),
            )),
            (RingValue::Product(..), _) | (_, RingValue::Product(..)) => {
                Err(RingError::VariantMismatch(format!("{name} of a product with a non-product")))
            }
            (RingValue::Int(a), RingValue::Int(b)) if name == "add" => Ok(RingValue::Int(a + b)),
            (RingValue::Int(a), RingValue::Int(b)) if name == "mul" => Ok(RingValue::Int(a * b)),
            (RingValue::Real { value: a, tol: ta }, RingValue::Real { value: b, tol: tb }) if name == "add" => {
                Ok(RingValue::Real { value: a + b, tol: ta + tb })
            }
            _ => Ok(RingValue::from_poly(op(&self.to_poly()?, &o.to_poly()?)?)),
        }
    }

    pub fn add(&self, o: &RingValue) -> Result<RingValue, RingError> {
        self.binary(o, &|a, b| a.add(b), "add")
    }

    pub fn mul(&self, o: &RingValue) -> Result<RingValue, RingError> {
        self.binary(o, &|a, b| a.mul(b), "mul")
    }

    pub fn neg(&self) -> RingValue {
        match self {
            RingValue::Int(n) => RingValue::Int(-n),
            RingValue::Rat(q) => RingValue::Rat(-q),
            RingValue::Exact(x) => RingValue::Exact(x.neg()),
            RingValue::Real { value, tol } => RingValue::Real { value: -value, tol: *tol },
            RingValue::Poly(p) => RingValue::Poly(p.neg()),
            RingValue::Tensor(t) => RingValue::Tensor(t.neg()),
            RingValue::Product(a, b) => RingValue::Product(Box::new(a.neg()), Box::new(b.neg())),
        }
    }

    pub fn sub(&self, o: &RingValue) -> Result<RingValue, RingError> {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> Result<RingValue, RingError> {
        self.mul(&RingValue::Rat(s.clone()))
    }

    pub fn pow(&self, k: u32) -> Result<RingValue, RingError> {
        (0..k).try_fold(RingValue::one(), |acc, _| acc.mul(self))
    }

    /// Error bound carried by the value (0 when exact).
    pub fn err(&self) -> f64 {
        match self {
            RingValue::Real { tol, .. } => *tol,
            RingValue::Poly(p) => p.err(),
            RingValue::Product(a, b) => a.err().max(b.err()),
            _ => 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.err() == 0.0 && !self.has_numeric_atoms()
    }

    fn has_numeric_atoms(&self) -> bool {
        match self.to_poly() {
            Ok(p) => p.terms().any(|(_, t)| t.terms().any(|(k, _)| k.iter().any(|m| m.numeric_atoms().next().is_some()))),
            Err(_) => false,
        }
    }

    /// Structural zero test (no tolerance).
    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Product(a, b) => a.is_zero() && b.is_zero(),
            RingValue::Real { value, .. } => *value == 0.0,
            _ => self.to_poly().map(|p| p.is_zero()).unwrap_or(false),
        }
    }

    /// Numeric value of a scalar.
    pub fn to_f64(&self) -> Option<f64> {
        match self {
            RingValue::Int(n) => n.to_f64(),
            RingValue::Rat(q) => Some(to_f64(q)),
            RingValue::Exact(x) => Some(x.to_f64()),
            RingValue::Real { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            RingValue::Int(n) => Some(Rational::from_integer(n.clone())),
            RingValue::Rat(q) => Some(q.clone()),
            RingValue::Exact(x) => x.as_rational(),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Image under the multiplication map R^{⊗r} → R.
    pub fn collapse(&self) -> Result<RingValue, RingError> {
        RingMap::Collapse.apply(self)
    }

    /// Coefficient of a monomial in the indeterminates.
    pub fn coefficient(&self, m: &[(&str, u32)]) -> Result<RingValue, RingError> {
        let p = self.to_poly()?;
        let mut c = Poly::constant(p.coefficient(m));
        c = c.with_err(p.err());
        Ok(RingValue::from_poly(c))
    }

    /// Equality up to `tol` on reals, exact on rationals, and under `policy`
    /// on tensor slots. The carried error bounds widen the tolerance.
    pub fn eq_within(&self, o: &RingValue, tol: f64, policy: Policy) -> Result<bool, RingError> {
        if let (RingValue::Product(a1, b1), RingValue::Product(a2, b2)) = (self, o) {
            return Ok(a1.eq_within(a2, tol, policy)? && b1.eq_within(b2, tol, policy)?);
        }
        let d = self.to_poly()?.sub(&o.to_poly()?)?;
        let slack = tol + d.err();
        for (_, t) in d.terms() {
            if t.rank() <= 1 {
                if t.collapse().abs() > slack {
                    return Ok(false);
                }
            } else if t.policy_form(policy.max_den, policy.tol).max_abs() > slack {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Normal form of a tensor-valued coefficient under `policy`.
    pub fn normalized(&self, policy: Policy) -> Result<Vec<(VarMonomial, NumericTensor)>, RingError> {
        let p = self.to_poly()?;
        Ok(p.terms()
            .map(|(m, t)| (m.clone(), t.policy_form(policy.max_den, policy.tol)))
            .filter(|(_, n)| !n.is_zero())
            .collect())
    }

    /// Tagged JSON with exact strings and floating values.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            RingValue::Int(n) => json!({"type": "int", "value": n.to_string()}),
            RingValue::Rat(q) => json!({"type": "rat", "value": format_rational(q), "float": to_f64(q)}),
            RingValue::Exact(x) => json!({"type": "exact", "value": x.to_string(), "float": x.to_f64()}),
            RingValue::Real { value, tol } => json!({"type": "real", "value": value, "tol": tol}),
            RingValue::Poly(p) => {
                let terms: Vec<serde_json::Value> = p
                    .terms()
                    .map(|(m, t)| {
                        let mono: Vec<String> = m.iter().map(|(v, e)| format!("{v}^{e}")).collect();
                        json!({
                            "monomial": mono,
                            "coefficient": RingValue::from_poly(Poly::constant(t.clone())).to_json(),
                        })
                    })
                    .collect();
                json!({"type": "poly", "rank": p.rank(), "err": p.err(), "terms": terms})
            }
            RingValue::Tensor(t) => {
                let raw: Vec<serde_json::Value> =
                    t.raw_tuples().into_iter().map(|(c, s)| json!({"coef": c, "slots": s})).collect();
                let n = t.policy_form(Policy::default().max_den, Policy::default().tol);
                let norm: Vec<serde_json::Value> =
                    n.terms.iter().map(|(c, s)| json!({"coef": c, "slots": s})).collect();
                json!({"type": "tensor", "rank": t.rank(), "raw": raw, "normalized": norm})
            }
            RingValue::Product(a, b) => json!({"type": "product", "left": a.to_json(), "right": b.to_json()}),
        }
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingValue::Int(n) => write!(f, "{n}"),
            RingValue::Rat(q) => write!(f, "{}", format_rational(q)),
            RingValue::Exact(x) => write!(f, "{x}"),
            RingValue::Real { value, tol } => write!(f, "{value:.15} ± {tol:e}"),
            RingValue::Poly(p) => write!(f, "{p}"),
            RingValue::Tensor(t) => write!(f, "{t}"),
            RingValue::Product(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// Sign of a scalar value, `None` for non-scalars.
pub fn sign(v: &RingValue) -> Option<i8> {
    match v {
        RingValue::Int(n) => Some(if n.is_positive() { 1 } else if n.is_negative() { -1 } else { 0 }),
        _ => v.to_f64().map(|x| if x > 0.0 { 1 } else if x < 0.0 { -1 } else { 0 }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::{q, qfrac};

    #[test]
    fn detect_rational_examples() {
        assert_eq!(detect_rational(0.25, 10_000, 1e-12), Some(qfrac(1, 4)));
        assert_eq!(detect_rational((1.0f64 / 3.0).acos() / std::f64::consts::PI, 10_000, 1e-12), None);
        assert_eq!(detect_rational(1.0 / 3.0 + 1e-15, 10_000, 1e-12), Some(qfrac(1, 3)));
        assert_eq!(detect_rational(-2.5, 10, 1e-12), Some(qfrac(-5, 2)));
        assert_eq!(detect_rational(3.0, 1, 1e-12), Some(q(3)));
    }

    #[test]
    fn real_equals_rational() {
        let a = RingValue::real(0.25, 1e-12);
        let b = RingValue::Rat(qfrac(1, 4));
        assert!(a.eq_within(&b, 0.0, Policy::default()).unwrap());
        assert!(!a.eq_within(&RingValue::Rat(qfrac(1, 3)), 1e-9, Policy::default()).unwrap());
    }

    #[test]
    fn tensor_half_ell_bucket() {
        let ell = ExactReal::sqrt_rational(&q(5));
        let t = RingValue::Tensor(Tensor::pure(&[ExactReal::rational(qfrac(1, 2)), ell.clone()]));
        let n = t.normalized(Policy::default()).unwrap();
        assert_eq!(n.len(), 1);
        let (c, slots) = &n[0].1.terms[0];
        assert!((c * slots[1] - ell.to_f64() / 2.0).abs() < 1e-15);
        assert_eq!(slots[0], 1.0);
    }

    #[test]
    fn ring_maps() {
        let a = ExactReal::angle_fraction(&qfrac(1, 9), 1);
        let v = RingValue::Exact(a.clone());
        let left = RingMap::embed(0, 2).apply(&v).unwrap();
        let right = RingMap::embed(1, 2).apply(&v).unwrap();
        let k = left.sub(&right).unwrap();
        assert!(k.collapse().unwrap().is_zero());
        assert_eq!(RingMap::Swap(0, 1).apply(&k).unwrap(), k.neg());
        let x = RingValue::var("x");
        let p = x.mul(&v).unwrap();
        let s = RingMap::Substitute("x".into(), Box::new(RingValue::from(2))).apply(&p).unwrap();
        assert_eq!(s, RingValue::Exact(a.scale(&q(2))));
    }

    #[test]
    fn products_are_componentwise() {
        let a = RingValue::Product(Box::new(RingValue::from(2)), Box::new(RingValue::Rat(qfrac(1, 2))));
        let b = a.mul(&a).unwrap();
        assert_eq!(b, RingValue::Product(Box::new(RingValue::from(4)), Box::new(RingValue::Rat(qfrac(1, 4)))));
        assert!(a.add(&RingValue::one()).is_err());
    }
}
