//! The interior involution, δ and duality on random cone and polytope
//! elements. Everything here is exact.

use super::{random::*, Case, SuiteConfig, SuiteError};
use crate::constructible::{ConeElement, PolytopeElement};
use crate::exact_geometry::linalg::q;
use crate::exact_geometry::Cone;
use num_bigint::BigInt;

fn diff(a: &ConeElement, b: &ConeElement) -> usize {
    a.sub(b).normal_form().len()
}

fn pdiff(a: &PolytopeElement, b: &PolytopeElement) -> usize {
    a.sub(b).normal_form().len()
}

fn sign(d: usize) -> i64 {
    if d.is_multiple_of(2) { 1 } else { -1 }
}

pub(super) fn involution(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let mut out = Vec::new();
    for d in cfg.dims(0..=3) {
        for i in 0..cfg.cases(100) {
            let rng = &mut stream(cfg.seed, &format!("involution/{d}/{i}"));
            let tag = |what: &str| format!("{what} cone d={d} #{i}");
            let x = random_cone_element(rng, d);
            let ix = x.interior();
            out.push(Case::cells(tag("I∘I = id"), diff(&ix.interior(), &x)));
            out.push(Case::exact(tag("ε∘I = e"), ix.epsilon(), x.local_euler()));
            out.push(Case::exact(tag("e∘I = ε"), ix.local_euler(), x.epsilon()));
            let di = x.dual().interior().dilate(&q(-1))?.scale(sign(d));
            out.push(Case::cells(tag("D∘I = (-1)^d Δ(-1)∘I∘D"), diff(&ix.dual(), &di)));
            if d >= 1 {
                out.push(Case::cells(tag("δ∘δ = 0"), x.delta(d)?.delta(d - 1)?.normal_form().len()));
            }
            // δ_{d+1}(ξ×η) = δ_d ξ × η + (-1)^d Iξ × δ_1 η
            let eta = random_cone_element(rng, 1);
            let lhs = x.product(&eta).delta(d + 1)?;
            let rhs = x.delta(d)?.product(&eta).add(&ix.product(&eta.delta(1)?).scale(sign(d)));
            out.push(Case::cells(tag("product rule"), diff(&lhs, &rhs)));

            let tag = |what: &str| format!("{what} polytope d={d} #{i}");
            let p = random_polytope_element(rng, d);
            let ip = p.interior();
            out.push(Case::cells(tag("I∘I = id"), pdiff(&ip.interior(), &p)));
            out.push(Case::exact(tag("χ∘I = χ"), ip.euler_char(), p.euler_char()));
            if d >= 1 {
                out.push(Case::cells(tag("δ∘δ = 0"), p.delta(d)?.delta(d - 1)?.normal_form().len()));
            }
            let eta = random_polytope_element(rng, 1);
            let lhs = p.product(&eta).delta(d + 1)?;
            let rhs = p.delta(d)?.product(&eta).add(&ip.product(&eta.delta(1)?).scale(sign(d)));
            out.push(Case::cells(tag("product rule"), pdiff(&lhs, &rhs)));
        }
    }
    Ok(out)
}

pub(super) fn duality(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let mut out = Vec::new();
    for d in cfg.dims(1..=4) {
        for i in 0..cfg.cases(50) {
            let rng = &mut stream(cfg.seed, &format!("duality/{d}/{i}"));
            let tag = |what: &str| format!("{what} d={d} #{i}");
            let c = random_cone(rng, d);
            out.push(Case::flag(tag("D∘D = id on cones"), "equal", c.dual().dual() == c));

            // P ∪ Q = K with P ∩ Q = K ∩ h⊥
            let h = int_vec(rng, d, 2);
            let neg: Vec<BigInt> = h.iter().map(|x| -x).collect();
            let (p, qc, pq) = (c.cut(&h, false), c.cut(&neg, false), c.cut(&h, true));
            out.push(Case::flag(tag("D(P ∪ Q) = DP ∩ DQ"), "equal", p.dual().intersect(&qc.dual()) == c.dual()));
            let el = |k: &Cone| ConeElement::cone(k);
            let sum = el(&p.dual()).add(&el(&qc.dual())).sub(&el(&p.dual().intersect(&qc.dual())));
            out.push(Case::cells(tag("D(P ∩ Q) = DP ∪ DQ"), diff(&el(&pq.dual()), &sum)));

            let x = random_cone_element(rng, d);
            let dx = x.dual();
            out.push(Case::cells(tag("D∘D = id on elements"), diff(&dx.dual(), &x)));
            out.push(Case::exact(tag("ε∘D = ε"), dx.epsilon(), x.epsilon()));
            out.push(Case::exact(tag("e∘D = (-1)^d e"), dx.local_euler(), x.local_euler() * sign(d)));
        }
    }
    Ok(out)
}
