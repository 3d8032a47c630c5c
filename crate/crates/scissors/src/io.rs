//! Geometry files.
//!
//! ```json
//! { "kind": "polytope" | "cone" | "complex" | "abstract",
//!   "dim": 3,
//!   "vertices": [["0", "1/2", "1"], ...],        // polytope, complex
//!   "generators": [["1", "0"], ...],             // cone rays
//!   "lines": [["0", "1"]],                       // cone lineality, optional
//!   "cells": [[0, 1, 2], ...],                   // complex, abstract
//!   "edge_lengths": { "0-1": "1" },              // abstract
//!   "edge_lengths_sq": { "0-2": "2" } }          // abstract, squared lengths
//! ```
//!
//! Rationals are strings `"p/q"`, decimal strings or JSON integers. A complex
//! without `vertices` is purely combinatorial: its cells are simplices on
//! integer labels.

use crate::exact_geometry::linalg::{format_rational, parse_rational, QVec, Rational};
use crate::exact_geometry::{AbstractComplex, CellComplex, Cone, GeometryError, Polytope, SimplicialComplex};
use num_traits::Signed;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("field `{field}`: {msg}")]
    Schema { field: String, msg: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn schema(field: impl Into<String>, msg: impl Into<String>) -> IoError {
    IoError::Schema { field: field.into(), msg: msg.into() }
}

#[derive(Clone, Debug)]
pub enum Geometry {
    Polytope(Polytope),
    Cone(Cone),
    /// Embedded complex with its vertex coordinates and cells as index lists.
    Complex { complex: CellComplex, vertices: Vec<QVec>, cells: Vec<Vec<usize>> },
    /// Combinatorial simplicial complex.
    Simplicial(SimplicialComplex),
    Abstract(AbstractComplex),
}

impl Geometry {
    pub fn kind(&self) -> &'static str {
        match self {
            Geometry::Polytope(_) => "polytope",
            Geometry::Cone(_) => "cone",
            Geometry::Complex { .. } | Geometry::Simplicial(_) => "complex",
            Geometry::Abstract(_) => "abstract",
        }
    }

    /// A triangulation. Cells given as simplices keep their labels; other
    /// embedded cells are triangulated by pulling.
    pub fn simplicial(&self) -> SimplicialComplex {
        match self {
            Geometry::Simplicial(k) => k.clone(),
            Geometry::Abstract(k) => k.complex().clone(),
            Geometry::Complex { complex, vertices, cells } => {
                let simplicial = cells.iter().all(|c| {
                    let pts: Vec<QVec> = c.iter().map(|&i| vertices[i].clone()).collect();
                    Polytope::from_points(complex.ambient(), &pts).is_ok_and(|p| p.dim() + 1 == c.len())
                });
                if simplicial {
                    SimplicialComplex::from_maximal(cells)
                } else {
                    complex.triangulate().1
                }
            }
            Geometry::Polytope(p) => CellComplex::from_polytope(p).triangulate().1,
            Geometry::Cone(_) => SimplicialComplex::from_maximal(&[vec![0]]),
        }
    }

    pub fn to_json(&self) -> Value {
        let pts = |v: &[QVec]| -> Value {
            v.iter().map(|p| p.iter().map(format_rational).collect::<Vec<_>>()).collect()
        };
        let ints = |v: &[num_bigint::BigInt]| -> Vec<String> { v.iter().map(ToString::to_string).collect() };
        match self {
            Geometry::Polytope(p) => json!({"kind": "polytope", "dim": p.ambient(), "vertices": pts(&p.vertices())}),
            Geometry::Cone(c) => json!({
                "kind": "cone", "dim": c.ambient(),
                "generators": c.rays().iter().map(|r| ints(r)).collect::<Vec<_>>(),
                "lines": c.lineality().iter().map(|r| ints(r)).collect::<Vec<_>>(),
            }),
            Geometry::Complex { complex, vertices, cells } => {
                json!({"kind": "complex", "dim": complex.ambient(), "vertices": pts(vertices), "cells": cells})
            }
            Geometry::Simplicial(k) => json!({"kind": "complex", "cells": k.maximal()}),
            Geometry::Abstract(k) => {
                let lens: Map<String, Value> = k
                    .complex()
                    .of_dim(1)
                    .iter()
                    .map(|e| (format!("{}-{}", e[0], e[1]), Value::from(format_rational(&k.sq_length(e[0], e[1])))))
                    .collect();
                json!({"kind": "abstract", "cells": k.complex().maximal(), "edge_lengths_sq": lens})
            }
        }
    }
}

fn rational(v: &Value, field: &str) -> Result<Rational, IoError> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| schema(field, format!("not a rational: {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("checked").into())),
        Value::Number(n) => parse_rational(&n.to_string()).ok_or_else(|| schema(field, "not a rational")),
        _ => Err(schema(field, "expected a rational string or integer")),
    }
}

fn array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| schema(field, "expected an array"))
}

fn points(obj: &Map<String, Value>, key: &str, dim: Option<usize>) -> Result<Vec<QVec>, IoError> {
    let Some(v) = obj.get(key) else {
        return Err(schema(key, "missing"));
    };
    let mut out = Vec::new();
    for (i, p) in array(v, key)?.iter().enumerate() {
        let f = format!("{key}[{i}]");
        let coords = array(p, &f)?
            .iter()
            .enumerate()
            .map(|(j, x)| rational(x, &format!("{f}[{j}]")))
            .collect::<Result<QVec, _>>()?;
        if let Some(d) = dim.filter(|d| *d != coords.len()) {
            return Err(schema(f, format!("expected {d} coordinates, found {}", coords.len())));
        }
        out.push(coords);
    }
    Ok(out)
}

fn cells(obj: &Map<String, Value>) -> Result<Vec<Vec<usize>>, IoError> {
    let v = obj.get("cells").ok_or_else(|| schema("cells", "missing"))?;
    array(v, "cells")?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            array(c, &format!("cells[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    x.as_u64().map(|x| x as usize).ok_or_else(|| schema(format!("cells[{i}][{j}]"), "expected an index"))
                })
                .collect()
        })
        .collect()
}

fn edge_map(obj: &Map<String, Value>, key: &str, square: bool, out: &mut BTreeMap<(usize, usize), Rational>) -> Result<(), IoError> {
    let Some(v) = obj.get(key) else {
        return Ok(());
    };
    let m = v.as_object().ok_or_else(|| schema(key, "expected an object"))?;
    for (k, x) in m {
        let f = format!("{key}.{k}");
        let (a, b) = k.split_once('-').ok_or_else(|| schema(&f, "edge key must be \"i-j\""))?;
        let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| schema(&f, "edge key must be \"i-j\""));
        let (a, b) = (parse(a)?, parse(b)?);
        let l = rational(x, &f)?;
        if !l.is_positive() {
            return Err(schema(f, "length must be positive"));
        }
        out.insert((a.min(b), a.max(b)), if square { l.clone() * l } else { l });
    }
    Ok(())
}

pub fn parse_geometry(text: &str) -> Result<Geometry, IoError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| IoError::Json { line: e.line(), column: e.column(), msg: e.to_string() })?;
    let obj = v.as_object().ok_or_else(|| schema("", "expected an object"))?;
    let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| schema("kind", "missing or not a string"))?;
    let dim = match obj.get("dim") {
        None => None,
        Some(d) => Some(d.as_u64().ok_or_else(|| schema("dim", "expected a natural number"))? as usize),
    };
    let need_dim = || dim.ok_or_else(|| schema("dim", "missing"));
    match kind {
        "polytope" => {
            let d = need_dim()?;
            Ok(Geometry::Polytope(Polytope::from_points(d, &points(obj, "vertices", Some(d))?)?))
        }
        "cone" => {
            let d = need_dim()?;
            let rays = points(obj, "generators", Some(d))?;
            let lines = if obj.contains_key("lines") { points(obj, "lines", Some(d))? } else { Vec::new() };
            Ok(Geometry::Cone(Cone::from_generators_q(d, &rays, &lines)))
        }
        "complex" => {
            let cs = cells(obj)?;
            if !obj.contains_key("vertices") {
                return Ok(Geometry::Simplicial(SimplicialComplex::from_maximal(&cs)));
            }
            let d = need_dim()?;
            let vs = points(obj, "vertices", Some(d))?;
            let mut polys = Vec::new();
            for (i, c) in cs.iter().enumerate() {
                let pts = c
                    .iter()
                    .map(|&j| vs.get(j).cloned().ok_or_else(|| schema(format!("cells[{i}]"), format!("no vertex {j}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                polys.push(Polytope::from_points(d, &pts)?);
            }
            Ok(Geometry::Complex { complex: CellComplex::new(d, polys)?, vertices: vs, cells: cs })
        }
        "abstract" => {
            let cs = cells(obj)?;
            let mut lens = BTreeMap::new();
            edge_map(obj, "edge_lengths", true, &mut lens)?;
            edge_map(obj, "edge_lengths_sq", false, &mut lens)?;
            Ok(Geometry::Abstract(AbstractComplex::new(&cs, lens)?))
        }
        other => Err(schema("kind", format!("unknown kind {other:?}"))),
    }
}

pub fn read_geometry(path: &Path) -> Result<Geometry, IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| IoError::Read { path: path.display().to_string(), source })?;
    parse_geometry(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::{q, qfrac};

    #[test]
    fn polytope_round_trip() {
        let text = r#"{"kind": "polytope", "dim": 2, "vertices": [["0","0"],["1","0"],["0","1/2"],[1,"0.5"]]}"#;
        let Geometry::Polytope(p) = parse_geometry(text).unwrap() else { panic!() };
        assert_eq!(p, Polytope::cuboid(&[q(0), q(0)], &[q(1), qfrac(1, 2)]));
        let again = parse_geometry(&Geometry::Polytope(p.clone()).to_json().to_string()).unwrap();
        assert!(matches!(again, Geometry::Polytope(x) if x == p));
    }

    #[test]
    fn cones_and_complexes() {
        let c = parse_geometry(r#"{"kind":"cone","dim":2,"generators":[["1","0"],["0","2"]]}"#).unwrap();
        assert!(matches!(c, Geometry::Cone(c) if c == Cone::orthant(2, &[0, 1])));
        let k = parse_geometry(r#"{"kind":"complex","cells":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(k.simplicial(), SimplicialComplex::simplex_boundary(2));
        let square = r#"{"kind":"complex","dim":2,"vertices":[[0,0],[1,0],[0,1],[1,1]],"cells":[[0,1,2,3]]}"#;
        let k = parse_geometry(square).unwrap();
        assert_eq!(k.simplicial().euler_char(), 1);
        assert_eq!(k.simplicial().of_dim(2).len(), 2);
    }

    #[test]
    fn abstract_lengths() {
        let text = r#"{"kind":"abstract","cells":[[0,1,2]],"edge_lengths":{"0-1":"1","1-2":"1"},"edge_lengths_sq":{"0-2":"2"}}"#;
        let Geometry::Abstract(k) = parse_geometry(text).unwrap() else { panic!() };
        assert_eq!(k.sq_length(2, 0), q(2));
    }

    #[test]
    fn errors_name_the_field() {
        let e = parse_geometry(r#"{"kind":"polytope","dim":2,"vertices":[["0","0"],["1"]]}"#).unwrap_err();
        assert!(matches!(&e, IoError::Schema { field, .. } if field == "vertices[1]"), "{e}");
        let e = parse_geometry(r#"{"kind":"polytope","dim":2,"vertices":[["0","x"]]}"#).unwrap_err();
        assert!(matches!(&e, IoError::Schema { field, .. } if field == "vertices[0][1]"), "{e}");
        let e = parse_geometry("{\n  \"kind\": \"cone\",\n  oops\n}").unwrap_err();
        assert!(matches!(e, IoError::Json { line: 3, .. }));
        assert!(matches!(parse_geometry(r#"{"kind":"torus"}"#), Err(IoError::Schema { .. })));
    }
}
