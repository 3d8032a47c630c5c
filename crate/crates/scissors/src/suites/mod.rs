//! Randomized identity suites. Each suite draws its cases from a stream
//! keyed by the seed and the suite name and reports one row per check.

mod algebra;
mod dehn;
mod groupoid;
mod polytopes;
pub mod random;
mod rings;

pub use random::*;

use crate::cone_invariants::{ConeInvariantError, McOptions};
use crate::constructible::ConstructibleError;
use crate::delta_homology::HomologyError;
use crate::exact_geometry::GeometryError;
use crate::graded_rings::GradedError;
use crate::ring_values::{Policy, RingError, RingValue};
use crate::star_engine::{Evaluator, StarError};
use serde::Serialize;
use std::ops::RangeInclusive;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Every suite, in report order.
pub const SUITES: &[&str] = &[
    "involution", "duality", "groupoid", "vchi", "intrinsic", "gauss-bonnet", "euler", "dehn", "conjugation",
    "tables", "e2", "frame", "homology",
];

/// Names accepted by [`run`] besides the suites themselves.
pub fn expand(name: &str) -> Option<Vec<&'static str>> {
    let group: &[&str] = match name {
        "all" => SUITES,
        "star" => &["vchi", "intrinsic", "gauss-bonnet", "euler", "conjugation"],
        "rings" => &["tables", "e2"],
        _ => return SUITES.iter().find(|s| **s == name).map(|s| vec![*s]),
    };
    Some(group.to_vec())
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides the suite's own dimension range.
    pub dims: Option<RangeInclusive<usize>>,
    /// Overrides the number of random cases per dimension.
    pub cases: Option<usize>,
    pub tol: f64,
    pub policy: Policy,
    pub mc: McOptions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, dims: None, cases: None, tol: 1e-9, policy: Policy::default(), mc: McOptions::default() }
    }
}

impl SuiteConfig {
    fn dims(&self, default: RangeInclusive<usize>) -> RangeInclusive<usize> {
        self.dims.clone().unwrap_or(default)
    }

    fn cases(&self, default: usize) -> usize {
        self.cases.unwrap_or(default)
    }

    fn evaluator(&self) -> Evaluator {
        Evaluator::new(McOptions { samples: self.mc.samples, seed: self.seed ^ self.mc.seed })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub tol: f64,
    pub pass: bool,
}

impl Case {
    fn values(case: String, lhs: &RingValue, rhs: &RingValue, tol: f64, policy: Policy) -> Result<Case, SuiteError> {
        let pass = lhs.eq_within(rhs, tol, policy)?;
        Ok(Case { case, lhs: lhs.to_string(), rhs: rhs.to_string(), tol, pass })
    }

    fn exact(case: String, lhs: impl ToString, rhs: impl ToString) -> Case {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        Case { pass: lhs == rhs, case, lhs, rhs, tol: 0.0 }
    }

    /// An identity of constructible elements, reported through the number of
    /// open cells on which the two sides differ.
    fn cells(case: String, differing_cells: usize) -> Case {
        Case::exact(case, format!("{differing_cells} differing cells"), "0 differing cells")
    }

    fn flag(case: String, what: &str, pass: bool) -> Case {
        let lhs = if pass { what.to_string() } else { format!("not {what}") };
        Case { case, lhs, rhs: what.to_string(), tol: 0.0, pass }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Star(#[from] StarError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Constructible(#[from] ConstructibleError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cone(#[from] ConeInvariantError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Runs one suite (not an alias).
pub fn run(name: &str, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let cases = match name {
        "involution" => algebra::involution(cfg)?,
        "duality" => algebra::duality(cfg)?,
        "groupoid" => groupoid::groupoid(cfg)?,
        "euler" => groupoid::euler(cfg)?,
        "vchi" => polytopes::vchi(cfg)?,
        "intrinsic" => polytopes::intrinsic_suite(cfg)?,
        "gauss-bonnet" => polytopes::gauss_bonnet(cfg)?,
        "conjugation" => polytopes::conjugation(cfg)?,
        "frame" => polytopes::frame(cfg)?,
        "dehn" => dehn::dehn(cfg)?,
        "tables" => rings::tables(cfg)?,
        "e2" => rings::e2(cfg)?,
        "homology" => rings::homology_suite(cfg)?,
        other => return Err(SuiteError::Unknown(other.into())),
    };
    Ok(Report { schema: SCHEMA_VERSION, suite: name.into(), seed: cfg.seed, cases })
}

/// Runs several suites on separate threads; reports come back in input order.
pub fn run_many(names: &[&str], cfg: &SuiteConfig) -> Vec<Result<Report, SuiteError>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|n| s.spawn(move || run(n, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_expand() {
        assert_eq!(expand("all").unwrap().len(), SUITES.len());
        assert_eq!(expand("rings").unwrap(), vec!["tables", "e2"]);
        assert_eq!(expand("dehn").unwrap(), vec!["dehn"]);
        assert!(expand("nope").is_none());
        assert!(matches!(run("nope", &SuiteConfig::default()), Err(SuiteError::Unknown(_))));
    }

    #[test]
    fn small_runs_pass() {
        let cfg = SuiteConfig { cases: Some(2), mc: McOptions { samples: 20_000, seed: 0 }, ..Default::default() };
        for r in run_many(SUITES, &cfg) {
            let r = r.unwrap();
            let bad: Vec<_> = r.failures().collect();
            assert!(bad.is_empty(), "{}: {bad:#?}", r.suite);
            assert!(!r.cases.is_empty());
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = SuiteConfig { cases: Some(3), dims: Some(1..=2), ..Default::default() };
        assert_eq!(run("involution", &cfg).unwrap().cases, run("involution", &cfg).unwrap().cases);
    }
}
