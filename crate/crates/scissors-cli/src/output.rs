use crate::{Format, RunConfig};
use scissors::delta_homology::HomologyError;
use scissors::exact_geometry::GeometryError;
use scissors::graded_rings::GradedError;
use scissors::io::IoError;
use scissors::ring_values::RingError;
use scissors::star_engine::StarError;
use scissors::suites::SuiteError;
use serde_json::Value;
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] IoError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error(transparent)]
    Star(#[from] StarError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("{0}")]
    Usage(String),
    #[error("writing {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A command result: a JSON document, the same content as CSV rows, and
/// whether every check it contains passed.
pub struct Output {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub pass: bool,
}

impl Output {
    pub fn emit(&self, cfg: &RunConfig) -> Result<(), CliError> {
        let bytes = match cfg.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s.into_bytes()
            }
            Format::Csv => csv_bytes(&self.header, &self.rows)?,
        };
        match &cfg.output {
            Some(path) => std::fs::write(path, bytes)
                .map_err(|source| CliError::Write { path: path.display().to_string(), source }),
            None => std::io::stdout()
                .write_all(&bytes)
                .map_err(|source| CliError::Write { path: "stdout".into(), source }),
        }
    }
}

pub fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.into_inner().map_err(|e| CliError::Write { path: "csv buffer".into(), source: e.into_error() })
}
