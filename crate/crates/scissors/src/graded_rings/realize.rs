//! Geometric witnesses for named expressions and comparison of elements.

use super::expr::{Angle, Generator, Monomial, NamedExpr, Ring};
use super::{GradedError, Method};
use crate::constructible::{ConeElement, PolytopeElement};
use crate::exact_geometry::linalg::{q, Rational};
use crate::exact_geometry::{Cone, IVec, Polytope, Subspace};
use crate::ring_values::{Policy, RingValue};
use crate::star_engine::families::intrinsic;
use crate::star_engine::{Evaluator, Morphism};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A geometric witness. E-elements live in `Q^n`; L-elements are cone
/// elements in n-dimensional subspaces, one per distinct subspace.
#[derive(Clone, Debug)]
pub enum Realization {
    E(PolytopeElement),
    L(Vec<ConeElement>),
}

impl Realization {
    pub fn ring(&self) -> Ring {
        match self {
            Realization::E(_) => Ring::E,
            Realization::L(_) => Ring::L,
        }
    }

    /// The L-part as a single cone element when it lives in one subspace.
    pub fn single_cone(&self) -> Option<ConeElement> {
        match self {
            Realization::L(v) if v.len() == 1 => Some(v[0].clone()),
            _ => None,
        }
    }

    pub fn sub(&self, o: &Realization) -> Option<Realization> {
        match (self, o) {
            (Realization::E(a), Realization::E(b)) => Some(Realization::E(a.sub(b))),
            (Realization::L(a), Realization::L(b)) => {
                let mut v = a.clone();
                for x in b {
                    push_merged(&mut v, x.neg());
                }
                Some(Realization::L(v))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Realization::E(x) => x.is_zero(),
            Realization::L(v) => v.iter().all(ConeElement::is_zero),
        }
    }
}

pub(crate) fn push_merged(v: &mut Vec<ConeElement>, x: ConeElement) {
    match v.iter_mut().find(|y| y.space() == x.space()) {
        Some(y) => *y = y.add(&x),
        None => v.push(x),
    }
}

fn ivec_of(xs: &[i64]) -> IVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// Fewest integers whose squares sum to `n` (at most four).
fn sum_of_squares(n: i64) -> Vec<i64> {
    let root = |m: i64| -> Option<i64> {
        let r = (m as f64).sqrt().round() as i64;
        (r * r == m).then_some(r)
    };
    if let Some(r) = root(n) {
        return vec![r];
    }
    let lim = |m: i64| (m as f64).sqrt() as i64 + 1;
    for i in 1..=lim(n) {
        if let Some(j) = root(n - i * i).filter(|_| i * i <= n) {
            return vec![i, j];
        }
    }
    for i in 1..=lim(n) {
        for j in i..=lim(n) {
            let r = n - i * i - j * j;
            if r < 0 {
                break;
            }
            if let Some(k) = root(r) {
                return vec![i, j, k];
            }
        }
    }
    for i in 1..=lim(n) {
        for j in i..=lim(n) {
            for k in j..=lim(n) {
                let r = n - i * i - j * j - k * k;
                if r < 0 {
                    break;
                }
                if let Some(l) = root(r) {
                    return vec![i, j, k, l];
                }
            }
        }
    }
    unreachable!("every natural number is a sum of four squares")
}

/// `a(θ)`: a sector of angle θ minus the closed half-line along its first
/// edge, in a rational 2-plane. The sector's second edge needs rational
/// `cos² θ`; the plane is spanned by `e_1` and a vector `w ⊥ e_1` with
/// `|w|² = a(b−a)` where `cos² θ = a/b`.
pub fn sector_element(theta: &Angle) -> Result<ConeElement, GradedError> {
    let range = || GradedError::Unrealizable(format!("a({theta}) needs 0 < θ <= 2π"));
    if let Some(r) = theta.pi_multiple() {
        if !r.is_positive() || r > q(2) {
            return Err(range());
        }
        let plane = Subspace::full(2);
        if r == q(2) {
            // a(π) + a(π): two half-planes minus their boundary rays
            return Ok(ConeElement::from_terms(&plane, &[(Cone::whole(2), 1), (Cone::origin(2), -1)])?);
        }
        if r.is_one() {
            let half = Cone::from_generators(2, &[ivec_of(&[0, 1])], &[ivec_of(&[1, 0])]);
            let ray = Cone::from_generators(2, &[ivec_of(&[1, 0])], &[]);
            return Ok(ConeElement::from_terms(&plane, &[(half, 1), (ray, -1)])?);
        }
    }
    let x = theta.to_f64();
    if !(x > 0.0 && x < std::f64::consts::TAU) {
        return Err(range());
    }
    let (c2, sign) = theta.cos2().ok_or_else(|| GradedError::Unrealizable(format!("a({theta})")))?;
    let upper = x < std::f64::consts::PI;
    let (w, first): (Vec<i64>, i64) = if c2.is_zero() {
        (vec![1], 0)
    } else {
        let (a, b) = (c2.numer().to_i64(), c2.denom().to_i64());
        let (Some(a), Some(b)) = (a, b) else {
            return Err(GradedError::Unrealizable(format!("a({theta}): cos² too large")));
        };
        (sum_of_squares(a * (b - a)), i64::from(sign) * a)
    };
    let m = 1 + w.len();
    let mut e1 = vec![0i64; m];
    e1[0] = 1;
    let mut wv = vec![0i64; m];
    wv[1..].copy_from_slice(&w);
    let mut dir = wv.iter().map(|&c| if upper { c } else { -c }).collect::<Vec<_>>();
    dir[0] = first;
    let minus_e1: Vec<i64> = e1.iter().map(|c| -c).collect();
    let space = Subspace::span_int(m, &[ivec_of(&e1), ivec_of(&wv)]);
    let ray = |v: &[i64]| Cone::from_generators(m, &[ivec_of(v)], &[]);
    let terms = if upper {
        vec![(Cone::from_generators(m, &[ivec_of(&e1), ivec_of(&dir)], &[]), 1), (ray(&e1), -1)]
    } else {
        vec![
            (Cone::from_generators(m, &[ivec_of(&wv)], &[ivec_of(&e1)]), 1),
            (Cone::from_generators(m, &[ivec_of(&minus_e1), ivec_of(&dir)], &[]), 1),
            (ray(&minus_e1), -1),
            (ray(&e1), -1),
        ]
    };
    Ok(ConeElement::from_terms(&space, &terms)?)
}

fn l_generator(g: &Generator) -> Result<ConeElement, GradedError> {
    let line = |c: Cone| ConeElement::cone(&c);
    Ok(match g {
        Generator::T => line(Cone::origin(1)),
        Generator::D => line(Cone::orthant(1, &[0])),
        Generator::S => line(Cone::whole(1)),
        Generator::Dp => line(Cone::orthant(1, &[0])).sub(&line(Cone::origin(1))),
        Generator::A(theta) => sector_element(theta)?,
        Generator::P | Generator::Q(_) => return Err(GradedError::MixedRing),
    })
}

fn e_generator(g: &Generator) -> Result<PolytopeElement, GradedError> {
    let point = |x: Rational| PolytopeElement::from_polytope(&Polytope::point(&[x]));
    Ok(match g {
        Generator::P => point(q(0)),
        Generator::Q(l) if l.is_zero() => PolytopeElement::zero(1),
        Generator::Q(l) => {
            let seg = Polytope::from_points(1, &[vec![q(0)], vec![l.clone()]])?;
            PolytopeElement::from_polytope(&seg).sub(&point(l.clone()))
        }
        _ => return Err(GradedError::MixedRing),
    })
}

fn factors(m: &Monomial, pad: usize, unit: Generator) -> Vec<Generator> {
    let mut out = vec![unit; pad];
    for (g, k) in m {
        out.extend(std::iter::repeat_n(g.clone(), *k as usize));
    }
    out
}

/// A witness for `x` in degree `n`; lower-degree monomials are padded with
/// `p` (E) or `t` (L).
pub fn realize(x: &NamedExpr, n: usize) -> Result<Realization, GradedError> {
    if x.degree() > n {
        return Err(GradedError::Degree { degree: x.degree(), n });
    }
    let pad = |m: &Monomial| n - m.iter().map(|(g, k)| g.degree() * *k as usize).sum::<usize>();
    match x.ring {
        Ring::E => {
            let mut acc = PolytopeElement::zero(n);
            for (m, c) in x.terms() {
                let mut el = PolytopeElement::from_polytope(&Polytope::point(&[]));
                for g in factors(m, pad(m), Generator::P) {
                    el = el.product(&e_generator(&g)?);
                }
                acc = acc.add(&el.scale_big(c));
            }
            Ok(Realization::E(acc))
        }
        Ring::L => {
            let mut out: Vec<ConeElement> = Vec::new();
            for (m, c) in x.terms() {
                let mut el = ConeElement::cone(&Cone::origin(0));
                for g in factors(m, pad(m), Generator::T) {
                    el = el.product(&l_generator(&g)?);
                }
                push_merged(&mut out, el.scale_big(c));
            }
            Ok(Realization::L(out))
        }
    }
}

/// `Σ weight · 𝒰(cell)` over the k-dimensional open cells, each measured in
/// its own span.
pub(crate) fn top_conical_volume(x: &ConeElement, k: usize, ev: &Evaluator) -> Result<RingValue, GradedError> {
    let mut acc = RingValue::zero();
    for cell in x.normal_form().into_iter().filter(|c| c.dim == k) {
        let u = ev.cone(&Morphism::ConicalVolume, &cell.closure, &cell.closure.span())?;
        acc = acc.add(&u.scale(&Rational::from_integer(cell.weight))?)?;
    }
    Ok(acc)
}

/// Invariants of a realization in degree `n`.
///
/// E: intrinsic volumes `χ(0..=n)`. L: `ε`, `e` and the top conical volume
/// `𝒰_n`. For `n <= 2` these separate elements of E_n and L_n.
pub fn probes(r: &Realization, n: usize, ev: &Evaluator) -> Result<Vec<(String, RingValue)>, GradedError> {
    match r {
        Realization::E(x) => {
            let v = ev.polytope_element(&intrinsic(), x)?;
            (0..=n as u32).map(|j| Ok((format!("chi{j}"), v.coefficient(&[("x", j)])?))).collect()
        }
        Realization::L(xs) => {
            let (mut eps, mut e) = (BigInt::zero(), BigInt::zero());
            for x in xs {
                eps += x.epsilon();
                e += x.local_euler();
            }
            let mut out = vec![("eps".to_string(), RingValue::from(Rational::from_integer(eps))), (
                "e".to_string(),
                RingValue::from(Rational::from_integer(e)),
            )];
            // only the top-dimensional 𝒰 survives refinement of the normal form
            if n > 0 {
                let mut u = RingValue::zero();
                for x in xs {
                    u = u.add(&top_conical_volume(x, n, ev)?)?;
                }
                out.push((format!("U{n}"), u));
            }
            Ok(out)
        }
    }
}

/// Outcome of comparing two elements of E_n or L_n.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub equal: bool,
    pub method: Method,
    pub lhs: Vec<(String, RingValue)>,
    pub rhs: Vec<(String, RingValue)>,
}

pub(crate) fn same_value(a: &RingValue, b: &RingValue) -> Result<bool, GradedError> {
    if a.is_exact() && b.is_exact() {
        return Ok(a.sub(b)?.is_zero());
    }
    Ok(a.eq_within(b, 1e-12, Policy::default())?)
}

/// Compares two realizations in degree `n`: exactly when the witnesses agree
/// as constructible functions, otherwise through [`probes`].
pub fn compare(a: &Realization, b: &Realization, n: usize, ev: &Evaluator) -> Result<Comparison, GradedError> {
    let diff = a.sub(b).ok_or(GradedError::MixedRing)?;
    if diff.is_zero() {
        return Ok(Comparison { equal: true, method: Method::Exact, lhs: vec![], rhs: vec![] });
    }
    let (pa, pb) = (probes(a, n, ev)?, probes(b, n, ev)?);
    let mut equal = true;
    let mut exact = true;
    for ((_, x), (_, y)) in pa.iter().zip(&pb) {
        equal &= same_value(x, y)?;
        exact &= x.is_exact() && y.is_exact();
    }
    let method = match (exact, n <= 2) {
        (false, _) => Method::Numeric,
        (true, true) => Method::CompleteProbes,
        (true, false) => Method::ProbeEquality,
    };
    Ok(Comparison { equal, method, lhs: pa, rhs: pb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::qfrac;

    fn ev() -> Evaluator {
        Evaluator::default()
    }

    fn parse(s: &str) -> NamedExpr {
        NamedExpr::parse(s).unwrap()
    }

    #[test]
    fn squares() {
        assert_eq!(sum_of_squares(9), vec![3]);
        assert_eq!(sum_of_squares(5), vec![1, 2]);
        assert_eq!(sum_of_squares(3), vec![1, 1, 1]);
        assert_eq!(sum_of_squares(7).iter().map(|x| x * x).sum::<i64>(), 7);
        assert_eq!(sum_of_squares(7).len(), 4);
    }

    #[test]
    fn sector_volumes() {
        let e = ev();
        for (theta, frac) in [
            (Angle::pi_times(1, 3), qfrac(1, 6)),
            (Angle::pi_times(1, 2), qfrac(1, 4)),
            (Angle::pi_times(2, 3), qfrac(1, 3)),
            (Angle::pi_times(1, 1), qfrac(1, 2)),
            (Angle::pi_times(4, 3), qfrac(2, 3)),
            (Angle::pi_times(7, 4), qfrac(7, 8)),
            (Angle::pi_times(2, 1), qfrac(1, 1)),
        ] {
            let a = sector_element(&theta).unwrap();
            assert_eq!(a.space().dim(), 2);
            assert_eq!(a.epsilon(), BigInt::zero(), "{theta}");
            assert_eq!(a.local_euler(), BigInt::zero(), "{theta}");
            let u = top_conical_volume(&a, 2, &e).unwrap();
            assert_eq!(u, RingValue::from(frac), "{theta}");
        }
        assert!(sector_element(&Angle::pi_times(1, 5)).is_err());
        assert!(sector_element(&Angle::pi_times(3, 1)).is_err());
    }

    #[test]
    fn realizations_of_named_elements() {
        // t² is the origin of R².
        let Realization::L(v) = realize(&parse("t^2"), 2).unwrap() else { panic!() };
        assert!(v[0].equals(&ConeElement::cone(&Cone::origin(2))));
        // q(λ) is a half-open segment.
        let Realization::E(x) = realize(&parse("q(3/2)"), 1).unwrap() else { panic!() };
        assert_eq!(x.euler_char(), BigInt::zero());
        assert_eq!(x.value_at(&[qfrac(3, 2)]), BigInt::zero());
        assert_eq!(x.value_at(&[q(0)]), BigInt::one());
        // padding with p
        let Realization::E(y) = realize(&parse("p + q(1)"), 2).unwrap() else { panic!() };
        assert_eq!(y.ambient(), 2);
        assert!(matches!(realize(&parse("a(pi/2)"), 1), Err(GradedError::Degree { degree: 2, n: 1 })));
    }

    #[test]
    fn exact_and_probe_comparisons() {
        let e = ev();
        let cmp = |a: &str, b: &str, n| {
            compare(&realize(&parse(a), n).unwrap(), &realize(&parse(b), n).unwrap(), n, &e).unwrap()
        };
        let c = cmp("d*d'", "a(pi/2)", 2);
        assert!(c.equal);
        assert_eq!(c.method, Method::Exact);
        let c = cmp("t + s", "2d", 1);
        assert!(c.equal);
        assert_eq!(c.method, Method::CompleteProbes);
        assert!(!cmp("t", "d", 1).equal);
        assert!(!cmp("a(pi/3)", "a(pi/2)", 2).equal);
        assert!(cmp("a(pi/3) + a(pi/3)", "a(2pi/3)", 2).equal);
    }
}
