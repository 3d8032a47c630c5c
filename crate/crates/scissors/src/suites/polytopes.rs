//! Polytope invariants built by transport: 𝒲 ⋆ 0, intrinsic volumes,
//! angle defects, the conjugation identities and frame invariants.

use super::{random::*, Case, SuiteConfig, SuiteError};
use crate::constructible::PolytopeElement;
use crate::exact_geometry::linalg::{q, qfrac, QVec, Rational};
use crate::exact_geometry::{Polytope, Subspace};
use crate::ring_values::{ExactReal, RingValue};
use crate::star_engine::abstract_intrinsic::{intrinsic_volumes, surfaces, total_angle_defect};
use crate::star_engine::families::{conical_intrinsic, frame_polytope, intrinsic, star_u_euler, star_w_zero, t_multi, t_xy};
use crate::star_engine::{frame_invariant_direct, homogeneous_scale, Frame, Morphism, Object, PolytopeInvariant};
use num_bigint::BigInt;
use rand::Rng;

fn int(k: BigInt) -> RingValue {
    RingValue::from(Rational::from_integer(k))
}

fn sign(d: usize) -> i64 {
    if d.is_multiple_of(2) { 1 } else { -1 }
}

pub(super) fn vchi(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let ev = cfg.evaluator();
    let mut out = Vec::new();
    let unit = |g: &PolytopeInvariant| PolytopeInvariant::clone(g).transported(Morphism::identity(g.location()));
    for d in cfg.dims(0..=3) {
        for i in 0..cfg.cases(50) {
            let rng = &mut stream(cfg.seed, &format!("vchi/{d}/{i}"));
            let tag = |what: &str| format!("{what} d={d} #{i}");
            let p = PolytopeElement::from_polytope(&random_polytope(rng, d));
            let w0 = ev.polytope_element(&star_w_zero(), &p)?;
            out.push(Case::values(tag("𝒲 ⋆ 0 = χ"), &w0, &RingValue::one(), cfg.tol, cfg.policy)?);
            let uchi = ev.polytope_element(&star_u_euler(), &p)?;
            // the zero invariant is 1 on R^0
            let zero = RingValue::from(i64::from(d == 0));
            out.push(Case::values(tag("𝒰 ⋆ χ = 0"), &uchi, &zero, cfg.tol, cfg.policy)?);

            let x = random_polytope_element(rng, d);
            let w0 = ev.polytope_element(&star_w_zero(), &x)?;
            out.push(Case::values(tag("𝒲 ⋆ 0 = χ on elements"), &w0, &int(x.euler_char()), cfg.tol, cfg.policy)?);
            for (name, g) in [("𝒱", PolytopeInvariant::Volume), ("χ", PolytopeInvariant::Euler)] {
                let (a, b) = (ev.polytope_element(&unit(&g), &x)?, ev.polytope_element(&g, &x)?);
                out.push(Case::values(tag(&format!("1_p ⋆ {name} = {name}")), &a, &b, cfg.tol, cfg.policy)?);
            }
        }
    }
    Ok(out)
}

fn coefficients(v: &RingValue, n: usize) -> Result<Vec<RingValue>, SuiteError> {
    (0..=n as u32).map(|j| Ok(v.coefficient(&[("x", j)])?)).collect()
}

pub(super) fn intrinsic_suite(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let ev = cfg.evaluator();
    let mut out = Vec::new();
    let mut push = |case: String, a: &RingValue, b: &RingValue| -> Result<(), SuiteError> {
        out.push(Case::values(case, a, b, cfg.tol, cfg.policy)?);
        Ok(())
    };

    let square = PolytopeElement::from_polytope(&Polytope::unit_cube(2));
    let c = coefficients(&ev.polytope_element(&intrinsic(), &square)?, 2)?;
    for (j, want) in [1, 2, 1].into_iter().enumerate() {
        push(format!("χ({j}, unit square)"), &c[j], &RingValue::from(want))?;
    }
    for i in 0..cfg.cases(20) {
        let rng = &mut stream(cfg.seed, &format!("intrinsic/box/{i}"));
        let (a, b) = (random_positive(rng, 9), random_positive(rng, 9));
        let bx = PolytopeElement::from_polytope(&Polytope::cuboid(&[q(0), q(0)], &[a.clone(), b.clone()]));
        let c = coefficients(&ev.polytope_element(&intrinsic(), &bx)?, 2)?;
        let want = [q(1), &a + &b, &a * &b];
        for j in 0..3 {
            push(format!("χ({j}, [0,{a}]×[0,{b}])"), &c[j], &RingValue::from(want[j].clone()))?;
        }
    }

    for d in cfg.dims(1..=3) {
        for i in 0..cfg.cases(50) {
            let rng = &mut stream(cfg.seed, &format!("intrinsic/cone/{d}/{i}"));
            let tag = |what: &str| format!("{what} d={d} #{i}");
            let k = crate::constructible::ConeElement::cone(&random_cone(rng, d));
            let w = coefficients(&ev.cone_element(&conical_intrinsic(), &k)?, d)?;
            let wd = coefficients(&ev.cone_element(&conical_intrinsic(), &k.dual())?, d)?;
            let mut total = RingValue::zero();
            for j in 0..=d {
                total = total.add(&w[j])?;
                push(tag(&format!("𝒲({}, DP) = 𝒲({j}, P)", d - j)), &wd[d - j], &w[j])?;
            }
            push(tag("Σ_j 𝒲(j, P) = 1"), &total, &RingValue::one())?;
        }
    }

    for d in cfg.dims(1..=3) {
        for i in 0..cfg.cases(20) {
            let rng = &mut stream(cfg.seed, &format!("intrinsic/polytope/{d}/{i}"));
            let tag = |what: &str| format!("{what} d={d} #{i}");
            let x = random_polytope_element(rng, d);
            let c = coefficients(&ev.polytope_element(&intrinsic(), &x)?, d)?;
            let ci = coefficients(&ev.polytope_element(&intrinsic(), &x.interior())?, d)?;
            for j in 0..=d {
                push(tag(&format!("χ({j}, Iξ) = (-1)^{j} χ({j}, ξ)")), &ci[j], &c[j].scale(&q(sign(j)))?)?;
            }
            for lambda in [qfrac(1, 2), q(2), q(3)] {
                let cl = coefficients(&ev.polytope_element(&intrinsic(), &x.dilate(&lambda)?)?, d)?;
                for j in 0..=d {
                    let want = homogeneous_scale(&c[j], &lambda, j as u32)?;
                    push(tag(&format!("χ({j}, {lambda}ξ) = {lambda}^{j} χ({j}, ξ)")), &cl[j], &want)?;
                }
            }
            // χ(d−1, P) = ½ 𝒱_{d−1}(∂P) for a full-dimensional convex P
            let p = random_polytope(rng, d);
            let c = coefficients(&ev.polytope_element(&intrinsic(), &PolytopeElement::from_polytope(&p))?, d)?;
            let mut boundary = RingValue::zero();
            for (f, fd) in p.faces_with_dims() {
                if fd + 1 == d {
                    let v = f.volume();
                    boundary = boundary.add(&ExactReal::scaled_sqrt(&v.coef, &v.radicand).into())?;
                }
            }
            push(tag(&format!("χ({}, P) = ½ 𝒱(∂P)", d - 1)), &c[d - 1], &boundary.scale(&qfrac(1, 2))?)?;
        }
    }
    Ok(out)
}

pub(super) fn gauss_bonnet(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let mut out = Vec::new();
    let named = [
        ("cube surface", surfaces::cube_surface()?, 2),
        ("octahedron", surfaces::octahedron(&q(1))?, 2),
        ("flat torus", surfaces::flat_torus(&q(1))?, 0),
        ("projective plane", surfaces::projective_plane(&q(1))?, 1),
    ];
    for (name, k, chi) in named {
        let defect = total_angle_defect(&k, cfg.mc)?;
        out.push(Case::values(format!("Σ_v (1 − θ_v/2π), {name}"), &defect, &RingValue::from(chi), cfg.tol, cfg.policy)?);
        out.push(Case::exact(format!("χ({name}) from the complex"), k.complex().euler_char(), chi));
        let (v, _) = intrinsic_volumes(&k, cfg.mc)?;
        // a closed surface has no boundary, so χ(1) = ½ 𝒱₁(∂M) vanishes
        out.push(Case::values(format!("χ(1, {name}) = 0"), &v[1], &RingValue::zero(), cfg.tol, cfg.policy)?);
    }
    Ok(out)
}

pub(super) fn conjugation(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let ev = cfg.evaluator();
    let mut out = Vec::new();
    let var = RingValue::var;
    let gs = [("𝒱", PolytopeInvariant::Volume), ("χ", PolytopeInvariant::Euler)];
    let fs = [("𝒰", Morphism::ConicalVolume), ("𝒲", Morphism::DualVolume), ("T^{x,y}", t_xy(var("x"), var("y")))];
    for d in cfg.dims(0..=3) {
        for i in 0..cfg.cases(30) {
            let rng = &mut stream(cfg.seed, &format!("conjugation/{d}/{i}"));
            let tag = |what: &str| format!("{what} d={d} #{i}");
            let x = random_polytope_element(rng, d);
            for (name, g) in &gs {
                // (−p(G)∙e) ⋆ G = −∙GI
                let lhs = g.clone().transported(Morphism::LocalEuler.scaled(Object::scalar(-1).times(g.location())));
                let rhs = g.clone().interior().by(-1);
                let (a, b) = (ev.polytope_element(&lhs, &x)?, ev.polytope_element(&rhs, &x)?);
                out.push(Case::values(tag(&format!("(−p∙e) ⋆ {name} = −∙{name}I")), &a, &b, cfg.tol, cfg.policy)?);
            }
            let k = random_cone_element(rng, d);
            for (name, f) in &fs {
                // F ⋆ (s(F)∙e) = FΔ(−1)I
                let lhs = f.clone().then(Morphism::LocalEuler.scaled(f.source()));
                let rhs = f.clone().interior().reflect();
                let (a, b) = (ev.cone_element(&lhs, &k)?, ev.cone_element(&rhs, &k)?);
                out.push(Case::values(tag(&format!("{name} ⋆ (s∙e) = {name}Δ(−1)I")), &a, &b, cfg.tol, cfg.policy)?);
            }
            let neg = t_multi(&[var("x"), var("y").neg(), var("z")]);
            let pos = t_multi(&[var("x"), var("y"), var("z")]);
            let (a, b) = (ev.cone_element(&neg, &k)?, ev.cone_element(&pos, &k)?);
            out.push(Case::values(tag("T^{x,−y,z} = T^{x,y,z}"), &a, &b, cfg.tol, cfg.policy)?);
        }
    }
    Ok(out)
}

/// Convex hull of points in `{0,1,2}^d`, which often has faces orthogonal
/// to coordinate directions.
fn grid_polytope(rng: &mut impl Rng, d: usize) -> Polytope {
    loop {
        let n = rng.random_range(d + 1..=2 * d + 2);
        let pts: Vec<QVec> = (0..n).map(|_| (0..d).map(|_| q(rng.random_range(0..=2))).collect()).collect();
        if let Ok(p) = Polytope::from_points(d, &pts) {
            if p.dim() == d {
                return p;
            }
        }
    }
}

pub(super) fn frame(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let ev = cfg.evaluator();
    let mut out = Vec::new();
    for d in cfg.dims(1..=3) {
        let v = Subspace::full(d);
        for i in 0..cfg.cases(10) {
            let rng = &mut stream(cfg.seed, &format!("frame/{d}/{i}"));
            // rotate a grid polytope by Mᵀ; the rows of M then play the
            // role of coordinate directions
            let m = random_orthogonal(rng, d);
            let mt: Vec<QVec> = (0..d).map(|r| (0..d).map(|c| m[c][r].clone()).collect()).collect();
            let p = grid_polytope(rng, d).affine_image(&mt, &vec![q(0); d]);
            for k in 1..=d {
                let fr = Frame::new(m[..k].to_vec())?;
                let direct = frame_invariant_direct(&fr, &p, &v);
                let val = ev.polytope(&frame_polytope(&fr), &p, &v)?.coefficient(&[("x", k as u32)])?;
                let tol = if direct.is_exact() && val.is_exact() { 0.0 } else { cfg.tol };
                let case = format!("f_U(P) = [x^{k}] (xO^W∙L^U) ⋆ 𝒱 d={d} #{i}");
                out.push(Case::values(case, &val, &direct, tol, cfg.policy)?);
            }
        }
    }
    Ok(out)
}
