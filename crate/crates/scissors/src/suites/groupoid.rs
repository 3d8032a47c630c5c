//! Groupoid laws of the ⋆-product on random cones, and the Euler morphism
//! as a member of the `T` family.

use super::{random::*, Case, SuiteConfig, SuiteError};
use crate::constructible::ConeElement;
use crate::exact_geometry::linalg::Rational;
use crate::exact_geometry::Subspace;
use crate::ring_values::RingValue;
use crate::star_engine::families::{conical_intrinsic, t_xy};
use crate::star_engine::{star, Evaluator, Morphism, Object};
use num_bigint::BigInt;

fn var(s: &str) -> RingValue {
    RingValue::var(s)
}

fn int(k: BigInt) -> RingValue {
    RingValue::from(Rational::from_integer(k))
}

/// The morphisms under test, with their expected source and target scalars.
fn family() -> Vec<(&'static str, Morphism, RingValue, RingValue)> {
    vec![
        ("ε", Morphism::Epsilon, RingValue::one(), RingValue::one()),
        ("e", Morphism::LocalEuler, RingValue::from(-1), RingValue::one()),
        ("𝒰", Morphism::ConicalVolume, RingValue::one(), RingValue::zero()),
        ("𝒲", Morphism::DualVolume, RingValue::zero(), RingValue::one()),
        ("T^{x,y}", t_xy(var("x"), var("y")), var("y"), var("x")),
    ]
}

/// Compatible triples `(F, G, H)` with `s(F) = t(G)` and `s(G) = t(H)`.
fn triples() -> Vec<(&'static str, [Morphism; 3])> {
    let t = |a: &str, b: &str| t_xy(var(a), var(b));
    vec![
        ("T^{x,y}, T^{y,z}, T^{z,w}", [t("x", "y"), t("y", "z"), t("z", "w")]),
        ("𝒲, 𝒰, ε", [Morphism::DualVolume, Morphism::ConicalVolume, Morphism::Epsilon]),
        ("ε, 𝒲, 𝒰", [Morphism::Epsilon, Morphism::DualVolume, Morphism::ConicalVolume]),
        ("e, T^{-1,1}, ε", [Morphism::LocalEuler, t_xy(RingValue::from(-1), RingValue::one()), Morphism::Epsilon]),
    ]
}

struct Checker<'a> {
    ev: &'a Evaluator,
    cfg: &'a SuiteConfig,
    out: Vec<Case>,
}

impl Checker<'_> {
    fn same(&mut self, case: String, f: &Morphism, g: &Morphism, x: &ConeElement) -> Result<(), SuiteError> {
        let (a, b) = (self.ev.cone_element(f, x)?, self.ev.cone_element(g, x)?);
        self.value(case, &a, &b)
    }

    fn value(&mut self, case: String, a: &RingValue, b: &RingValue) -> Result<(), SuiteError> {
        self.out.push(Case::values(case, a, b, self.cfg.tol, self.cfg.policy)?);
        Ok(())
    }
}

pub(super) fn groupoid(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let ev = cfg.evaluator();
    let mut ck = Checker { ev: &ev, cfg, out: Vec::new() };
    let dims = cfg.dims(0..=3);
    let top = *dims.end();

    for (name, f, s, t) in family() {
        for d in dims.clone() {
            let v = Subspace::full(d);
            ck.value(format!("s({name}) on R^{d}"), &ev.object(&f.source(), &v)?, &s.pow(d as u32)?)?;
            ck.value(format!("t({name}) on R^{d}"), &ev.object(&f.target(), &v)?, &t.pow(d as u32)?)?;
        }
    }
    for (name, [f, g, h]) in triples() {
        let fg = star(f.clone(), g.clone(), &ev, top).is_ok();
        let gh = star(g.clone(), h.clone(), &ev, top).is_ok();
        ck.out.push(Case::flag(format!("{name} compatible"), "accepted", fg && gh));
    }
    let refused = star(Morphism::DualVolume, Morphism::DualVolume, &ev, top).is_err();
    ck.out.push(Case::flag("𝒲 ⋆ 𝒲 incompatible".into(), "refused", refused));

    for d in dims {
        for i in 0..cfg.cases(50) {
            let rng = &mut stream(cfg.seed, &format!("groupoid/{d}/{i}"));
            let x = random_cone_element(rng, d);
            let tag = |what: &str| format!("{what} d={d} #{i}");
            for (name, f, _, _) in family() {
                let left = Morphism::identity(f.target()).then(f.clone());
                ck.same(tag(&format!("1 ⋆ {name} = {name}")), &left, &f, &x)?;
                let right = f.clone().then(Morphism::identity(f.source()));
                ck.same(tag(&format!("{name} ⋆ 1 = {name}")), &right, &f, &x)?;
                let inv = f.clone().inverse();
                ck.same(tag(&format!("{name} ⋆ {name}⁻¹ = 1")), &f.clone().then(inv.clone()), &Morphism::identity(f.target()), &x)?;
                ck.same(tag(&format!("{name}⁻¹ ⋆ {name} = 1")), &inv.then(f.clone()), &Morphism::identity(f.source()), &x)?;
            }
            for (name, [f, g, h]) in triples() {
                let l = f.clone().then(g.clone()).then(h.clone());
                let r = f.then(g.then(h));
                ck.same(tag(&format!("associativity {name}")), &l, &r, &x)?;
            }
            let txy = t_xy(var("x"), var("y"));
            ck.same(tag("T^{x,y} ⋆ T^{y,z} = T^{x,z}"), &txy.clone().then(t_xy(var("y"), var("z"))), &t_xy(var("x"), var("z")), &x)?;
            ck.same(tag("T^{x,x} = 1_x"), &t_xy(var("x"), var("x")), &Morphism::identity(Object::var("x")), &x)?;
            ck.same(tag("T^{x,y}∘D = T^{y,x}"), &txy.inverse(), &t_xy(var("y"), var("x")), &x)?;

            let w = ev.cone_element(&conical_intrinsic(), &x)?;
            let wd = ev.cone_element(&conical_intrinsic(), &x.dual())?;
            let mut total = RingValue::zero();
            for j in 0..=d as u32 {
                let c = w.coefficient(&[("x", j)])?;
                total = total.add(&c)?;
                let dual = wd.coefficient(&[("x", d as u32 - j)])?;
                ck.value(tag(&format!("𝒲({}, DP) = 𝒲({j}, P)", d as u32 - j)), &dual, &c)?;
            }
            ck.value(tag("Σ_j 𝒲(j) = ε"), &total, &int(x.epsilon()))?;
        }
    }
    Ok(ck.out)
}

pub(super) fn euler(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let ev = cfg.evaluator();
    let mut ck = Checker { ev: &ev, cfg, out: Vec::new() };
    let t = t_xy(RingValue::one(), RingValue::from(-1));
    let half = Rational::new(1.into(), 2.into());
    for d in cfg.dims(0..=3) {
        for i in 0..cfg.cases(50) {
            let rng = &mut stream(cfg.seed, &format!("euler/{d}/{i}"));
            let x = random_cone_element(rng, d);
            let tag = |what: &str| format!("{what} d={d} #{i}");
            ck.same(tag("e = T^{1,-1}"), &Morphism::LocalEuler, &t, &x)?;
            ck.value(tag("e matches the element"), &ev.cone_element(&Morphism::LocalEuler, &x)?, &int(x.local_euler()))?;
            let w = ev.cone_element(&conical_intrinsic(), &x)?;
            let (mut even, mut odd) = (RingValue::zero(), RingValue::zero());
            for j in 0..=d as u32 {
                let c = w.coefficient(&[("x", j)])?;
                if j % 2 == 0 {
                    even = even.add(&c)?;
                } else {
                    odd = odd.add(&c)?;
                }
            }
            let (eps, e) = (int(x.epsilon()), int(x.local_euler()));
            ck.value(tag("Σ 𝒲(even) = (ε + e)/2"), &even, &eps.add(&e)?.scale(&half)?)?;
            ck.value(tag("Σ 𝒲(odd) = (ε − e)/2"), &odd, &eps.sub(&e)?.scale(&half)?)?;
        }
    }
    Ok(ck.out)
}
