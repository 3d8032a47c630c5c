//! Dehn-type invariants: the cube/tetrahedron gate, rearrangements, the
//! collapse back to intrinsic volumes and the morphism K.

use super::{random::*, Case, SuiteConfig, SuiteError};
use crate::constructible::{ConeElement, PolytopeElement};
use crate::exact_geometry::linalg::{q, qfrac};
use crate::exact_geometry::Polytope;
use crate::ring_values::{ExactReal, NumericTensor, RingValue};
use crate::star_engine::dehn::{chi_tilde, dehn_difference, scale_lengths};
use crate::star_engine::families::{intrinsic, k_morphism};

fn cuboid(lo: [i64; 3], hi: [i64; 3]) -> PolytopeElement {
    PolytopeElement::from_polytope(&Polytope::cuboid(&lo.map(q), &hi.map(q)))
}

fn shown(t: &NumericTensor) -> String {
    if t.is_zero() {
        "0".into()
    } else {
        format!("{} terms, max |c| = {:.6}", t.terms.len(), t.max_abs())
    }
}

pub(super) fn dehn(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let ev = cfg.evaluator();
    let mut out = Vec::new();

    // regular tetrahedron of edge 2√2, volume 8/3, scaled to volume 1
    let tet = PolytopeElement::from_polytope(&Polytope::from_int_points(
        3,
        &[vec![1, 1, 1], vec![1, -1, -1], vec![-1, 1, -1], vec![-1, -1, 1]],
    )?);
    let cube = cuboid([0, 0, 0], [1, 1, 1]);
    let lambda = ExactReal::numeric((3.0f64 / 8.0).cbrt());
    let t_cube = chi_tilde(&cube, 1, &ev)?;
    let t_tet = scale_lengths(&chi_tilde(&tet, 1, &ev)?, &lambda);
    let d = dehn_difference(&t_cube, &t_tet, cfg.policy);
    out.push(Case { case: "cube vs regular tetrahedron of equal volume".into(), lhs: shown(&d), rhs: "nonzero".into(), tol: cfg.policy.tol, pass: !d.is_zero() });

    // three unit cubes as a bar and as an L-tromino
    let bar = cuboid([0, 0, 0], [3, 1, 1]);
    let tromino = cuboid([0, 0, 0], [1, 1, 1])
        .add(&cuboid([1, 0, 0], [2, 1, 1]))
        .add(&cuboid([0, 1, 0], [1, 2, 1]))
        .sub(&cuboid([1, 0, 0], [1, 1, 1]))
        .sub(&cuboid([0, 1, 0], [1, 1, 1]));
    let d = dehn_difference(&chi_tilde(&bar, 1, &ev)?, &chi_tilde(&tromino, 1, &ev)?, cfg.policy);
    out.push(Case::exact("bar vs L-tromino of three unit cubes".into(), shown(&d), "0"));
    let split = cuboid([0, 0, 0], [1, 1, 1]).add(&cuboid([1, 0, 0], [2, 1, 1])).add(&cuboid([2, 0, 0], [3, 1, 1]))
        .sub(&cuboid([1, 0, 0], [1, 1, 1]))
        .sub(&cuboid([2, 0, 0], [2, 1, 1]));
    let d = dehn_difference(&chi_tilde(&bar, 1, &ev)?, &chi_tilde(&split, 1, &ev)?, cfg.policy);
    out.push(Case::exact("bar vs three glued unit cubes".into(), shown(&d), "0"));

    for d in cfg.dims(1..=3) {
        for i in 0..cfg.cases(10) {
            let rng = &mut stream(cfg.seed, &format!("dehn/{d}/{i}"));
            let tag = |what: &str| format!("{what} d={d} #{i}");
            let x = random_polytope_element(rng, d);
            let chi = ev.polytope_element(&intrinsic(), &x)?;
            for j in 0..=d as u32 {
                let c = chi_tilde(&x, j, &ev)?.collapse();
                let want = chi.coefficient(&[("x", j)])?;
                out.push(Case::values(tag(&format!("collapse χ̃({j}) = χ({j})")), &ExactReal::numeric(c).into(), &want, 1e-8, cfg.policy)?);
            }
            // lengths scale in the second slot only
            let l = [qfrac(1, 2), q(2), q(3)][i % 3].clone();
            let scaled = chi_tilde(&x.dilate(&l)?, 1, &ev)?;
            let want = scale_lengths(&chi_tilde(&x, 1, &ev)?, &ExactReal::rational(l.clone()));
            out.push(Case::exact(tag(&format!("χ̃(1, {l}ξ) = (1 ⊗ {l}) χ̃(1, ξ)")), &scaled, &want));

            let k = ConeElement::cone(&random_cone(rng, d));
            let kv = ev.cone_element(&k_morphism(), &k)?.collapse()?;
            out.push(Case::values(tag("collapse K = 𝒰 ⋆ 𝒲 = 0"), &kv, &RingValue::zero(), cfg.tol, cfg.policy)?);
        }
    }
    Ok(out)
}
