//! The named rings E and L, and δ-homology of small complexes.

use super::{random::*, Case, SuiteConfig, SuiteError};
use crate::delta_homology::{delta_squared_vanishes, examples, homology, two_is_boundary, ChainBasis};
use crate::exact_geometry::linalg::{qfrac, Rational};
use crate::graded_rings::{e2_coords, l2_relation_check, realize_e2, verify_tables, TableEntry};
use crate::ring_values::RingValue;
use num_bigint::BigInt;
use rand::Rng;

fn from_table(e: TableEntry) -> Case {
    Case { case: e.name, lhs: e.lhs, rhs: e.rhs, tol: 0.0, pass: e.pass }
}

pub(super) fn tables(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let ev = cfg.evaluator();
    let mut out: Vec<Case> = verify_tables(&ev)?.into_iter().map(from_table).collect();
    out.extend(l2_relation_check(&ev)?.into_iter().map(from_table));
    Ok(out)
}

pub(super) fn e2(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let ev = cfg.evaluator();
    let mut out = Vec::new();
    for i in 0..cfg.cases(50) {
        let rng = &mut stream(cfg.seed, &format!("e2/{i}"));
        let k = BigInt::from(rng.random_range(-3..=3));
        let mut signed = || -> Rational { qfrac(rng.random_range(-9..=9), rng.random_range(1..=5)) };
        let (lambda, mu) = (signed(), signed());
        let got = e2_coords(&realize_e2(&k, &lambda, &mu), &ev)?;
        let case = format!("e2_coords(realize({k}, {lambda}, {mu}))");
        let lhs = format!("({}, {}, {})", got.k, got.lambda, got.mu);
        let rhs = format!("({k}, {lambda}, {mu})");
        let exact = |v: &RingValue, want: Rational| -> Result<bool, SuiteError> {
            Ok(v.is_exact() && v.eq_within(&RingValue::from(want), 0.0, cfg.policy)?)
        };
        let pass = got.k == k && exact(&got.lambda, lambda)? && exact(&got.mu, mu)?;
        out.push(Case { case, lhs, rhs, tol: 0.0, pass });
    }
    Ok(out)
}

/// Expected `Z/2` ranks `Σ_k dim H_{n−2k}(X; Z/2)`.
fn expected(betti: &[usize], n: usize) -> usize {
    (0..=n / 2).filter_map(|k| betti.get(n - 2 * k)).sum()
}

pub(super) fn homology_suite(cfg: &SuiteConfig) -> Result<Vec<Case>, SuiteError> {
    let max_n = *cfg.dims(0..=6).end();
    let mut out = Vec::new();
    let spaces = [
        ("point", examples::point(), vec![1]),
        ("circle", examples::circle(), vec![1, 1]),
        ("disk", examples::disk(), vec![1]),
    ];
    for (name, complex, betti) in spaces {
        let b = ChainBasis::new(complex)?;
        for n in 0..=max_n {
            let h = homology(&b, n);
            let tag = |what: &str| format!("{what} {name} n={n}");
            out.push(Case::exact(tag("Z/2 rank of h_n"), h.z2_rank(), expected(&betti, n)));
            out.push(Case::flag(tag("h_n killed by 2"), "2-torsion", h.killed_by_two()));
            out.push(Case::flag(tag("δ_n δ_{n+1} = 0"), "zero", delta_squared_vanishes(&b, n)));
            out.push(Case::flag(tag("δ_{n+1} = 2 − δ_n on 𝒫_n"), "holds", two_is_boundary(&b, n)));
        }
    }
    Ok(out)
}
