//! δ on L: the geometric `δ_n ξ = ξ − (−1)^n I ξ` and its identification in
//! L_{n−1}.

use super::expr::{Angle, NamedExpr, Ring};
use super::realize::{push_merged, realize, top_conical_volume, Realization};
use super::{GradedError, Membership, Method};
use crate::constructible::ConeElement;
use crate::exact_geometry::linalg::Rational;
use crate::exact_geometry::Cone;
use crate::ring_values::RingValue;
use crate::star_engine::Evaluator;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// An element of L_k through `(ε, e, 𝒰_k)`; for `k <= 2` this is
/// `e·t^k + (ε − e)·t^{k−1}d + a(2π·𝒰_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LCoords {
    pub k: usize,
    pub eps: BigInt,
    pub e: BigInt,
    pub u_top: RingValue,
}

impl LCoords {
    pub fn is_zero(&self) -> bool {
        self.eps.is_zero() && self.e.is_zero() && self.u_top.is_zero()
    }

    /// The named expression with these coordinates, when `k <= 2` and the
    /// angle part is a rational multiple of π.
    pub fn to_expr(&self) -> Option<NamedExpr> {
        let c = |x: &BigInt| NamedExpr::constant(Ring::L, 1).scale(x);
        let t = NamedExpr::t();
        let d = NamedExpr::d();
        let rest = &self.eps - &self.e;
        match self.k {
            0 => Some(c(&self.eps)),
            1 => t.scale(&self.e).add(&d.scale(&rest)).ok(),
            2 => {
                let base = t.pow(2).ok()?.scale(&self.e).add(&t.mul(&d).ok()?.scale(&rest)).ok()?;
                let u = self.u_top.as_rational()?;
                base.add(&angle_part(&u)).ok()
            }
            _ => None,
        }
    }
}

/// `a(2πu)` written with angles in `(0, 2π]`.
fn angle_part(u: &Rational) -> NamedExpr {
    if u.is_zero() {
        return NamedExpr::zero(Ring::L);
    }
    let sign = if u.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
    let a = u.abs();
    let whole = a.floor().to_integer();
    let frac = &a - Rational::from_integer(whole.clone());
    let mut e = NamedExpr::a(Angle::pi_times(2, 1)).scale(&whole);
    if !frac.is_zero() {
        e = e.add(&NamedExpr::a(Angle::PiTimes(frac * Rational::from_integer(2.into())))).expect("same ring");
    }
    e.scale(&sign)
}

/// `(ε, e, 𝒰_k)` of a realization.
pub fn identify_l(r: &Realization, k: usize, ev: &Evaluator) -> Result<LCoords, GradedError> {
    let Realization::L(xs) = r else {
        return Err(GradedError::MixedRing);
    };
    let (mut eps, mut e, mut u) = (BigInt::zero(), BigInt::zero(), RingValue::zero());
    for x in xs {
        eps += x.epsilon();
        e += x.local_euler();
        if k > 0 {
            u = u.add(&top_conical_volume(x, k, ev)?)?;
        }
    }
    Ok(LCoords { k, eps, e, u_top: u })
}

/// Geometric `δ_n` on each piece of an L-realization.
pub fn delta_realization(r: &Realization, n: usize) -> Result<Realization, GradedError> {
    let Realization::L(xs) = r else {
        return Err(GradedError::MixedRing);
    };
    let mut out = Vec::new();
    for x in xs {
        push_merged(&mut out, x.delta(n)?);
    }
    Ok(Realization::L(out))
}

/// `δ_n x` identified in L_{n−1}.
pub fn delta_l(x: &NamedExpr, n: usize, ev: &Evaluator) -> Result<LCoords, GradedError> {
    if n == 0 {
        return Err(GradedError::Degree { degree: x.degree(), n });
    }
    let r = realize(x, n)?;
    identify_l(&delta_realization(&r, n)?, n - 1, ev)
}

/// `ξ ∈ L_n⁺`, i.e. `δ_n ξ = 0`.
pub fn membership_l(r: &Realization, n: usize, ev: &Evaluator) -> Result<Membership, GradedError> {
    if n == 0 {
        return Ok(Membership { member: Some(true), method: Method::Exact });
    }
    let d = delta_realization(r, n)?;
    if d.is_zero() {
        return Ok(Membership { member: Some(true), method: Method::Exact });
    }
    let c = identify_l(&d, n - 1, ev)?;
    let complete = n - 1 <= 2;
    let method = if complete { Method::CompleteProbes } else { Method::ProbeEquality };
    let member = if !c.is_zero() {
        Some(false)
    } else if complete {
        Some(true)
    } else {
        None
    };
    Ok(Membership { member, method })
}

/// One exact identity between cone elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyCheck {
    pub name: String,
    pub pass: bool,
}

fn line(c: Cone) -> ConeElement {
    ConeElement::cone(&c)
}

/// Checks, on every piece `η` of a realization in degree `m`:
/// `δ(d′η) = −tη + dδη`, `δ(dη) = tη + d′δη`,
/// `δ(ξη) = δξ·η + (−1)^i Iξ·δη` for `ξ ∈ {t, d, s, d′}` and `δδ = 0`.
/// All are equalities of constructible functions.
pub fn key_checks(r: &Realization, m: usize) -> Result<Vec<KeyCheck>, GradedError> {
    let Realization::L(xs) = r else {
        return Err(GradedError::MixedRing);
    };
    let t = line(Cone::origin(1));
    let d = line(Cone::orthant(1, &[0]));
    let s = line(Cone::whole(1));
    let dp = d.sub(&t);
    let (mut k1, mut k2, mut leib, mut sq0) = (true, true, true, true);
    for eta in xs {
        let de = eta.delta(m)?;
        let lhs = dp.product(eta).delta(m + 1)?;
        k1 &= lhs.equals(&t.product(eta).neg().add(&d.product(&de)));
        let lhs = d.product(eta).delta(m + 1)?;
        k2 &= lhs.equals(&t.product(eta).add(&dp.product(&de)));
        for xi in [&t, &d, &s, &dp] {
            let lhs = xi.product(eta).delta(m + 1)?;
            let ixi = xi.interior().neg();
            let rhs = xi.delta(1)?.product(eta).add(&ixi.product(&de));
            leib &= lhs.equals(&rhs);
            sq0 &= lhs.delta(m)?.is_zero();
        }
        if m > 0 {
            sq0 &= de.delta(m - 1)?.is_zero();
        }
    }
    let mk = |name: &str, pass| KeyCheck { name: name.into(), pass };
    Ok(vec![mk("key1", k1), mk("key2", k2), mk("leib", leib), mk("sq0", sq0)])
}

/// Parity helper: `(x - y)/2` when `x ≡ y (mod 2)`.
pub(crate) fn half_difference(x: &BigInt, y: &BigInt) -> Option<BigInt> {
    let diff = x - y;
    diff.is_even().then(|| diff / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> NamedExpr {
        NamedExpr::parse(s).unwrap()
    }

    #[test]
    fn delta_table() {
        let ev = Evaluator::default();
        let val = |s: &str, n| delta_l(&parse(s), n, &ev).unwrap().to_expr().unwrap();
        let c = |k| NamedExpr::constant(Ring::L, k);
        assert_eq!(val("t", 1), c(2));
        assert_eq!(val("d", 1), c(1));
        assert_eq!(val("s", 1), c(0));
        assert_eq!(val("d'", 1), c(-1));
        assert!(val("a(pi/3)", 2).is_zero());
        assert!(val("a(pi/2)", 2).is_zero());
        assert!(val("a(4pi/3)", 2).is_zero());
        // δ(td) = d − I d = 2d − t, read in L_1
        assert_eq!(val("t*d", 2), parse("2d - t"));
    }

    #[test]
    fn manifold_cone_cases() {
        // quadrant: a boundary manifold cone of dimension 2 in R²
        let quadrant = ConeElement::cone(&Cone::orthant(2, &[0, 1]));
        let rays = ConeElement::cone(&Cone::orthant(2, &[0]))
            .add(&ConeElement::cone(&Cone::orthant(2, &[1])))
            .sub(&ConeElement::cone(&Cone::origin(2)));
        assert!(quadrant.delta(2).unwrap().equals(&rays));
        // the whole plane: interior manifold cone of even codimension 0
        assert!(ConeElement::cone(&Cone::whole(2)).delta(2).unwrap().is_zero());
        // a line in R^2: interior manifold cone of dimension n - 1
        let l = ConeElement::cone(&Cone::from_generators(2, &[], &[vec![1.into(), 0.into()]]));
        assert!(l.delta(2).unwrap().equals(&l.scale(2)));
    }

    #[test]
    fn key_identities() {
        for (s, m) in [("t", 1), ("d", 1), ("d'", 1), ("s", 1), ("a(pi/3)", 2), ("t*d + a(3pi/2)", 2)] {
            let r = realize(&parse(s), m).unwrap();
            for c in key_checks(&r, m).unwrap() {
                assert!(c.pass, "{} on {s}", c.name);
            }
        }
    }

    #[test]
    fn plus_membership() {
        let ev = Evaluator::default();
        let m = |s: &str, n| membership_l(&realize(&parse(s), n).unwrap(), n, &ev).unwrap();
        assert_eq!(m("d", 1).member, Some(false));
        assert_eq!(m("s", 1), Membership { member: Some(true), method: Method::Exact });
        assert_eq!(m("a(pi/2)", 2).member, Some(true));
        assert_eq!(m("t^2", 2), Membership { member: Some(true), method: Method::Exact });
        assert_eq!(m("t*d", 2).member, Some(false));
        assert_eq!(half_difference(&BigInt::from(5), &BigInt::from(1)), Some(BigInt::from(2)));
    }
}
