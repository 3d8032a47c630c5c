use crate::output::{csv_bytes, usage, CliError, Output};
use crate::RunConfig;
use scissors::cone_invariants::McOptions;
use scissors::constructible::{ConeElement, PolytopeElement};
use scissors::delta_homology::{delta_squared_vanishes, homology_table, two_is_boundary, ChainBasis};
use scissors::exact_geometry::linalg::{parse_rational, QVec};
use scissors::exact_geometry::Subspace;
use scissors::graded_rings::{compare, delta_l, membership_e, membership_l, probes, realize, Membership, NamedExpr, Realization};
use scissors::io::{read_geometry, Geometry};
use scissors::ring_values::{ExactReal, NumericTensor, Policy, RingValue};
use scissors::star_engine::abstract_intrinsic::intrinsic_volumes;
use scissors::star_engine::dehn::{chi_tilde, dehn_difference, scale_lengths};
use scissors::star_engine::families::*;
use scissors::star_engine::{frame_invariant_direct, Evaluator, Frame, Morphism, PolytopeInvariant};
use scissors::suites::{expand, run_many, Report, SuiteConfig, SCHEMA_VERSION, SUITES};
use serde_json::{json, Value};
use std::ops::RangeInclusive;
use std::path::Path;

fn mc(cfg: &RunConfig) -> McOptions {
    McOptions { samples: cfg.mc_samples, seed: cfg.seed }
}

fn policy(cfg: &RunConfig) -> Policy {
    Policy { max_den: cfg.max_den, ..Policy::default() }
}

fn evaluator(cfg: &RunConfig) -> Evaluator {
    Evaluator::new(mc(cfg))
}

fn kv_rows(pairs: &[(&str, String)]) -> Vec<Vec<String>> {
    pairs.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect()
}

/// `"1,0;0,1"` as rows of rationals.
fn parse_rows(s: &str) -> Result<Vec<QVec>, CliError> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| parse_rational(x.trim()).ok_or_else(|| usage(format!("not a rational: {x:?}"))))
                .collect()
        })
        .collect()
}

/// `"a..b"`, `"a..=b"` or `"a"`.
fn parse_dims(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| usage(format!("bad dimension range {s:?}")));
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => num(s)?..=num(s)?,
    };
    if r.is_empty() {
        return Err(usage(format!("empty dimension range {s:?}")));
    }
    Ok(r)
}

/// Parameters of `T^{x,y,..}`: integers and fractions are constants, other
/// tokens are indeterminates.
fn parse_params(name: &str, head: &str) -> Option<Vec<RingValue>> {
    let inner = name.strip_prefix(head)?.strip_prefix('{')?.strip_suffix('}')?;
    Some(
        inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                let (neg, body) = match t.strip_prefix('-') {
                    Some(b) => (true, b),
                    None => (false, t),
                };
                let v = parse_rational(body).map_or_else(|| RingValue::var(body), RingValue::from);
                if neg { v.neg() } else { v }
            })
            .collect(),
    )
}

enum Built {
    Cone(Morphism),
    Polytope(PolytopeInvariant),
}

fn build(name: &str, frame: Option<&Frame>) -> Result<Built, CliError> {
    let need_frame = || frame.cloned().ok_or_else(|| usage(format!("{name} needs --frame")));
    let one = RingValue::one;
    let y = || RingValue::var("y");
    if let Some(p) = parse_params(name, "T^").or_else(|| parse_params(name, "t^")) {
        return match p.len() {
            0 => Err(usage("T needs at least one index")),
            2 => Ok(Built::Cone(t_xy(p[0].clone(), p[1].clone()))),
            _ => Ok(Built::Cone(t_multi(&p))),
        };
    }
    if let Some(p) = parse_params(name, "S^").or_else(|| parse_params(name, "s^")) {
        return match p.len() {
            0 | 1 => Err(usage("S needs at least two indices")),
            2 => Ok(Built::Polytope(s_xy(p[0].clone(), p[1].clone()))),
            _ => Ok(Built::Polytope(s_multi(&p))),
        };
    }
    Ok(match name.to_ascii_lowercase().as_str() {
        "chi" => Built::Polytope(PolytopeInvariant::Euler),
        "vol" => Built::Polytope(PolytopeInvariant::Volume),
        "intrinsic" => Built::Polytope(intrinsic()),
        "dehn_s" => Built::Polytope(dehn_s(one(), y())),
        "frame_f_u" => Built::Polytope(frame_polytope(&need_frame()?)),
        "eps" => Built::Cone(Morphism::Epsilon),
        "e" => Built::Cone(Morphism::LocalEuler),
        "u" => Built::Cone(Morphism::ConicalVolume),
        "w" => Built::Cone(Morphism::DualVolume),
        "conical_intrinsic" => Built::Cone(conical_intrinsic()),
        "dehn_t" => Built::Cone(dehn_t(one(), y())),
        "k" => Built::Cone(k_morphism()),
        "l^u" => Built::Cone(frame_l(&need_frame()?)),
        _ => return Err(usage(format!("unknown invariant {name:?}"))),
    })
}

fn polytope_element(g: &Geometry) -> Option<PolytopeElement> {
    match g {
        Geometry::Polytope(p) => Some(PolytopeElement::from_polytope(p)),
        Geometry::Complex { complex, .. } => Some(PolytopeElement::from_complex(complex)),
        _ => None,
    }
}

fn ambient(g: &Geometry) -> usize {
    match g {
        Geometry::Polytope(p) => p.ambient(),
        Geometry::Cone(c) => c.ambient(),
        Geometry::Complex { complex, .. } => complex.ambient(),
        Geometry::Simplicial(k) => k.dim().unwrap_or(0),
        Geometry::Abstract(k) => k.complex().dim().unwrap_or(0),
    }
}

fn coefficients(v: &RingValue, var: &str, label: &str, n: usize) -> Result<Vec<(String, RingValue)>, CliError> {
    (0..=n as u32).map(|j| Ok((format!("{label}{j}"), v.coefficient(&[(var, j)])?))).collect()
}

pub fn invariant_eval(
    cfg: &RunConfig,
    name: &str,
    input: &Path,
    dim: Option<usize>,
    frame: Option<&str>,
) -> Result<Output, CliError> {
    let geom = read_geometry(input)?;
    let n = ambient(&geom);
    if let Some(d) = dim.filter(|d| *d != n) {
        return Err(usage(format!("--dim {d} but the input lives in dimension {n}")));
    }
    let frame = frame.map(parse_rows).transpose()?.map(Frame::new).transpose()?;
    let ev = evaluator(cfg);
    let lower = name.to_ascii_lowercase();
    let value = match (build(name, frame.as_ref())?, &geom) {
        (Built::Polytope(_), Geometry::Abstract(k)) if lower == "intrinsic" => {
            let (vals, _) = intrinsic_volumes(k, mc(cfg))?;
            vals.iter().enumerate().try_fold(RingValue::zero(), |acc, (j, v)| {
                acc.add(&v.mul(&RingValue::var("x").pow(j as u32)?)?)
            })?
        }
        (Built::Polytope(g), geom) => {
            let x = polytope_element(geom)
                .ok_or_else(|| usage(format!("{name} is a polytope invariant; the input is a {}", geom.kind())))?;
            ev.polytope_element(&g, &x)?
        }
        (Built::Cone(f), Geometry::Cone(c)) => ev.cone_element(&f, &ConeElement::cone(c))?,
        (Built::Cone(_), geom) => {
            return Err(usage(format!("{name} is a cone invariant; the input is a {}", geom.kind())));
        }
    };
    let coeffs = match lower.as_str() {
        "intrinsic" => coefficients(&value, "x", "chi", n)?,
        "conical_intrinsic" => coefficients(&value, "x", "W", n)?,
        "dehn_s" | "dehn_t" => coefficients(&value, "y", "y^", n)?,
        "frame_f_u" => {
            let k = frame.as_ref().map_or(0, Frame::len) as u32;
            vec![(format!("f_U (x^{k})"), value.coefficient(&[("x", k)])?)]
        }
        _ => Vec::new(),
    };
    let mut rows = vec![vec!["value".to_string(), value.to_string()]];
    rows.extend(coeffs.iter().map(|(k, v)| vec![k.clone(), v.to_string()]));
    let json = json!({
        "schema": SCHEMA_VERSION,
        "invariant": name,
        "input": geom.kind(),
        "dim": n,
        "value": value.to_json(),
        "coefficients": coeffs.iter().map(|(k, v)| (k.clone(), v.to_json())).collect::<serde_json::Map<_, _>>(),
        "half_width": ev.max_half_width(),
    });
    Ok(Output { json, header: vec!["key", "value"], rows, pass: true })
}

fn suite_config(cfg: &RunConfig, dims: Option<&str>, cases: Option<usize>) -> Result<SuiteConfig, CliError> {
    Ok(SuiteConfig {
        seed: cfg.seed,
        dims: dims.map(parse_dims).transpose()?,
        cases,
        tol: cfg.tol,
        policy: policy(cfg),
        mc: McOptions { samples: cfg.mc_samples, seed: 0 },
    })
}

fn resolve(names: &[String]) -> Result<Vec<&'static str>, CliError> {
    let mut out: Vec<&'static str> = Vec::new();
    for n in names {
        for s in expand(n).ok_or_else(|| usage(format!("unknown suite {n:?}; try `identities list`")))? {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

fn run_suites(cfg: &RunConfig, names: &[String], dims: Option<&str>, cases: Option<usize>) -> Result<Vec<Report>, CliError> {
    let sc = suite_config(cfg, dims, cases)?;
    let names = resolve(names)?;
    run_many(&names, &sc).into_iter().map(|r| r.map_err(CliError::from)).collect()
}

const CASE_HEADER: [&str; 6] = ["suite", "case", "lhs", "rhs", "tol", "pass"];

fn case_rows(reports: &[Report]) -> Vec<Vec<String>> {
    reports
        .iter()
        .flat_map(|r| {
            r.cases.iter().map(|c| {
                vec![r.suite.clone(), c.case.clone(), c.lhs.clone(), c.rhs.clone(), c.tol.to_string(), c.pass.to_string()]
            })
        })
        .collect()
}

fn reports_json(cfg: &RunConfig, reports: &[Report]) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "seed": cfg.seed,
        "passed": reports.iter().all(Report::passed),
        "reports": reports,
    })
}

pub fn identities(cfg: &RunConfig, names: &[String], dims: Option<&str>, cases: Option<usize>) -> Result<Output, CliError> {
    let reports = run_suites(cfg, names, dims, cases)?;
    for r in &reports {
        let failed = r.failures().count();
        eprintln!("{}: {} cases, {} failed", r.suite, r.cases.len(), failed);
    }
    Ok(Output {
        json: reports_json(cfg, &reports),
        header: CASE_HEADER.to_vec(),
        rows: case_rows(&reports),
        pass: reports.iter().all(Report::passed),
    })
}

pub fn list_suites() -> Output {
    let aliases = ["all", "star", "rings"];
    let mut rows: Vec<Vec<String>> = SUITES.iter().map(|s| vec![s.to_string(), "suite".into()]).collect();
    rows.extend(aliases.iter().map(|a| vec![a.to_string(), format!("alias: {}", expand(a).unwrap_or_default().join(" "))]));
    let json = json!({ "suites": SUITES, "aliases": aliases.iter().map(|a| (a.to_string(), json!(expand(a)))).collect::<serde_json::Map<_, _>>() });
    Output { json, header: vec!["name", "kind"], rows, pass: true }
}

fn numeric_json(t: &NumericTensor) -> Value {
    t.terms.iter().map(|(c, s)| json!({"coef": c, "slots": s})).collect()
}

pub fn dehn(cfg: &RunConfig, a: &Path, b: &Path, j: u32, normalize: bool) -> Result<Output, CliError> {
    let load = |p: &Path| -> Result<PolytopeElement, CliError> {
        let g = read_geometry(p)?;
        polytope_element(&g).ok_or_else(|| usage(format!("{}: expected a polytope or complex, got a {}", p.display(), g.kind())))
    };
    let (xa, xb) = (load(a)?, load(b)?);
    if xa.ambient() != xb.ambient() {
        return Err(usage(format!("dimensions differ: {} vs {}", xa.ambient(), xb.ambient())));
    }
    let ev = evaluator(cfg);
    let vol = |x: &PolytopeElement| -> Result<RingValue, CliError> { Ok(ev.polytope_element(&PolytopeInvariant::Volume, x)?) };
    let (va, vb) = (vol(&xa)?, vol(&xb)?);
    let ta = chi_tilde(&xa, j, &ev)?;
    let mut tb = chi_tilde(&xb, j, &ev)?;
    let mut scale = None;
    if normalize && va != vb {
        let (fa, fb) = (va.to_f64().unwrap_or(0.0), vb.to_f64().unwrap_or(0.0));
        if fa <= 0.0 || fb <= 0.0 {
            return Err(usage("volume normalization needs full-dimensional inputs; pass --no-normalize"));
        }
        let lambda = (fa / fb).powf(1.0 / xa.ambient() as f64);
        tb = scale_lengths(&tb, &ExactReal::numeric(lambda.powi(j as i32)));
        scale = Some(lambda);
    }
    let diff = dehn_difference(&ta, &tb, policy(cfg));
    let verdict = if diff.is_zero() { "no obstruction detected" } else { "obstructed" };
    let json = json!({
        "schema": SCHEMA_VERSION,
        "j": j,
        "volume_a": va.to_json(),
        "volume_b": vb.to_json(),
        "length_scale_b": scale,
        "chi_tilde_a": ta.to_string(),
        "chi_tilde_b": tb.to_string(),
        "difference": numeric_json(&diff),
        "max_den": cfg.max_den,
        "policy_tol": policy(cfg).tol,
        "verdict": verdict,
    });
    let rows = kv_rows(&[
        ("verdict", verdict.into()),
        ("chi_tilde_a", ta.to_string()),
        ("chi_tilde_b", tb.to_string()),
        ("difference_terms", diff.terms.len().to_string()),
        ("difference_max_abs", diff.max_abs().to_string()),
    ]);
    Ok(Output { json, header: vec!["key", "value"], rows, pass: true })
}

pub fn homology(input: &Path, max_n: usize) -> Result<Output, CliError> {
    let geom = read_geometry(input)?;
    let basis = ChainBasis::new(geom.simplicial())?;
    let mut groups = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for h in homology_table(&basis, max_n) {
        let dd = delta_squared_vanishes(&basis, h.n);
        let two = two_is_boundary(&basis, h.n);
        pass &= dd && two && h.killed_by_two();
        let torsion: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
        rows.push(vec![
            h.n.to_string(),
            h.free_rank.to_string(),
            torsion.join(" "),
            h.z2_rank().to_string(),
            h.killed_by_two().to_string(),
            dd.to_string(),
            two.to_string(),
        ]);
        groups.push(json!({
            "n": h.n,
            "free_rank": h.free_rank,
            "torsion": torsion,
            "z2_rank": h.z2_rank(),
            "killed_by_two": h.killed_by_two(),
            "delta_squared_vanishes": dd,
            "two_is_boundary": two,
        }));
    }
    let json = json!({
        "schema": SCHEMA_VERSION,
        "simplices": basis.complex().len(),
        "max_n": max_n,
        "groups": groups,
        "passed": pass,
    });
    let header = vec!["n", "free_rank", "torsion", "z2_rank", "killed_by_two", "delta_squared_vanishes", "two_is_boundary"];
    Ok(Output { json, header, rows, pass })
}

fn membership_json(m: &Membership) -> Value {
    json!({"member": m.member, "method": m.method.to_string()})
}

fn probes_json(p: &[(String, RingValue)]) -> serde_json::Map<String, Value> {
    p.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()
}

pub fn rings_eval(cfg: &RunConfig, expr: &str, n: usize) -> Result<Output, CliError> {
    let x = NamedExpr::parse(expr)?;
    let ev = evaluator(cfg);
    let r = realize(&x, n)?;
    let p = probes(&r, n, &ev)?;
    let (membership, plus) = match &r {
        Realization::E(el) => (membership_e(el, n, &ev)?, "E+"),
        Realization::L(_) => (membership_l(&r, n, &ev)?, "L+"),
    };
    let delta = match &r {
        Realization::L(_) if n >= 1 => {
            let c = delta_l(&x, n, &ev)?;
            Some(c.to_expr().map_or_else(|| format!("{c:?}"), |e| e.to_string()))
        }
        _ => None,
    };
    let mut rows: Vec<Vec<String>> = p.iter().map(|(k, v)| vec![k.clone(), v.to_string()]).collect();
    let verdict = match membership.member {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    };
    rows.push(vec![format!("in {plus}"), format!("{verdict} ({})", membership.method)]);
    if let Some(d) = &delta {
        rows.push(vec!["delta".into(), d.clone()]);
    }
    let json = json!({
        "schema": SCHEMA_VERSION,
        "expr": x.to_string(),
        "degree": n,
        "ring": format!("{:?}", r.ring()),
        "probes": probes_json(&p),
        "membership": membership_json(&membership),
        "delta": delta,
    });
    Ok(Output { json, header: vec!["key", "value"], rows, pass: true })
}

pub fn rings_compare(cfg: &RunConfig, lhs: &str, rhs: &str, n: usize) -> Result<Output, CliError> {
    let (a, b) = (NamedExpr::parse(lhs)?, NamedExpr::parse(rhs)?);
    let ev = evaluator(cfg);
    let c = compare(&realize(&a, n)?, &realize(&b, n)?, n, &ev)?;
    let json = json!({
        "schema": SCHEMA_VERSION,
        "lhs": a.to_string(),
        "rhs": b.to_string(),
        "degree": n,
        "equal": c.equal,
        "method": c.method.to_string(),
        "lhs_probes": probes_json(&c.lhs),
        "rhs_probes": probes_json(&c.rhs),
    });
    let rows = kv_rows(&[("equal", c.equal.to_string()), ("method", c.method.to_string())]);
    Ok(Output { json, header: vec!["key", "value"], rows, pass: c.equal })
}

pub fn frame(cfg: &RunConfig, input: &Path, rows: &str) -> Result<Output, CliError> {
    let geom = read_geometry(input)?;
    let Geometry::Polytope(p) = &geom else {
        return Err(usage(format!("frame invariants need a polytope, got a {}", geom.kind())));
    };
    let fr = Frame::new(parse_rows(rows)?)?;
    let n = p.ambient();
    if fr.vectors().iter().any(|v| v.len() != n) || fr.len() > n {
        return Err(usage(format!("frame vectors must have {n} entries and number at most {n}")));
    }
    let v = Subspace::full(n);
    let direct = frame_invariant_direct(&fr, p, &v);
    let ev = evaluator(cfg);
    let k = fr.len() as u32;
    let transport = ev.polytope(&frame_polytope(&fr), p, &v)?.coefficient(&[("x", k)])?;
    let tol = if direct.is_exact() && transport.is_exact() { 0.0 } else { cfg.tol };
    let pass = transport.eq_within(&direct, tol, policy(cfg))?;
    let json = json!({
        "schema": SCHEMA_VERSION,
        "k": k,
        "direct": direct.to_json(),
        "transport": transport.to_json(),
        "tol": tol,
        "pass": pass,
    });
    let rows = kv_rows(&[("direct", direct.to_string()), ("transport", transport.to_string()), ("pass", pass.to_string())]);
    Ok(Output { json, header: vec!["key", "value"], rows, pass })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

pub fn report(cfg: &RunConfig, out: &Path, names: &[String]) -> Result<Output, CliError> {
    let reports = run_suites(cfg, names, None, None)?;
    std::fs::create_dir_all(out).map_err(|source| CliError::Write { path: out.display().to_string(), source })?;
    write(&out.join("report.json"), serde_json::to_string_pretty(&reports_json(cfg, &reports))?.as_bytes())?;
    let summary: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let failed = r.failures().count();
            vec![r.suite.clone(), r.cases.len().to_string(), failed.to_string(), r.passed().to_string()]
        })
        .collect();
    let header = vec!["suite", "cases", "failed", "pass"];
    write(&out.join("summary.csv"), &csv_bytes(&header, &summary)?)?;
    let pass = reports.iter().all(Report::passed);
    let suites: serde_json::Map<String, Value> = reports
        .iter()
        .map(|r| (r.suite.clone(), json!({"cases": r.cases.len(), "failed": r.failures().count(), "pass": r.passed()})))
        .collect();
    let json = json!({
        "schema": SCHEMA_VERSION,
        "seed": cfg.seed,
        "tol": cfg.tol,
        "max_den": cfg.max_den,
        "mc_samples": cfg.mc_samples,
        "suites": suites,
        "passed": pass,
    });
    write(&out.join("acceptance.json"), serde_json::to_string_pretty(&json)?.as_bytes())?;
    Ok(Output { json, header, rows: summary, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_ranges() {
        assert_eq!(parse_dims("0..3").unwrap(), 0..=3);
        assert_eq!(parse_dims("1..=2").unwrap(), 1..=2);
        assert_eq!(parse_dims("4").unwrap(), 4..=4);
        assert!(parse_dims("3..1").is_err());
        assert!(parse_dims("a..b").is_err());
    }

    #[test]
    fn t_params() {
        let p = parse_params("T^{x,-y,1/2}", "T^").unwrap();
        assert_eq!(p, vec![RingValue::var("x"), RingValue::var("y").neg(), RingValue::from(parse_rational("1/2").unwrap())]);
        assert!(parse_params("T^x", "T^").is_none());
    }

    #[test]
    fn frame_rows() {
        let r = parse_rows("3/5,4/5;0,1").unwrap();
        assert_eq!(r.len(), 2);
        assert!(parse_rows("1,x").is_err());
    }
}
