//! Pair lists for `analyze` and `sweep`.
//!
//! Columns: `label,class` plus one source per row, tried in this order:
//! `entropy` (a precomputed value), `sequence` (a stored 3D symbol
//! sequence, CSV or JSON) or `k,l` (object ids, looked up in the row's
//! `input` files, `;`-separated, or else in the global `--input` files).
//! Relative paths are taken from the manifest's directory.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use qtc3d::analysis::PairClass;
use qtc3d::trajectory::{load_csv, ColumnMap, Trajectory};
use qtc3d::QtcError;

use crate::CliError;

#[derive(Debug, Deserialize)]
struct Record {
    label: String,
    #[serde(default)]
    class: String,
    #[serde(default)]
    input: String,
    #[serde(default)]
    k: String,
    #[serde(default)]
    l: String,
    #[serde(default)]
    sequence: String,
    #[serde(default)]
    entropy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Entropy(f64),
    Sequence(PathBuf),
    Pair { inputs: Vec<PathBuf>, k: String, l: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub label: String,
    pub class: PairClass,
    pub source: Source,
}

pub fn read(path: &Path, global_inputs: &[PathBuf]) -> Result<Vec<Entry>, CliError> {
    let base = path.parent().unwrap_or(Path::new("")).to_path_buf();
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| parse_error(path, e))?;
    let mut out = Vec::new();
    for rec in rdr.deserialize::<Record>() {
        let rec = rec.map_err(|e| parse_error(path, e))?;
        let line = out.len() as u64 + 2;
        let class: PairClass = rec.class.parse()?;
        let source = if let Some(e) = rec.entropy {
            Source::Entropy(e)
        } else if !rec.sequence.is_empty() {
            Source::Sequence(base.join(&rec.sequence))
        } else if !rec.k.is_empty() && !rec.l.is_empty() {
            let inputs = if rec.input.is_empty() {
                global_inputs.to_vec()
            } else {
                rec.input.split(';').map(|p| base.join(p.trim())).collect()
            };
            if inputs.is_empty() {
                return Err(QtcError::Parse { line, message: format!("pair '{}' has no input files", rec.label) }.into());
            }
            Source::Pair { inputs, k: rec.k, l: rec.l }
        } else {
            return Err(QtcError::Parse {
                line,
                message: format!("row '{}' needs entropy, sequence or k and l", rec.label),
            }
            .into());
        };
        out.push(Entry { label: rec.label, class, source });
    }
    Ok(out)
}

fn parse_error(path: &Path, e: csv::Error) -> CliError {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    QtcError::Parse { line, message: format!("{}: {e}", path.display()) }.into()
}

/// Loads each trajectory file once.
#[derive(Default)]
pub struct TrajectoryCache {
    files: HashMap<PathBuf, Vec<Trajectory>>,
}

impl TrajectoryCache {
    pub fn find(
        &mut self,
        inputs: &[PathBuf],
        id: &str,
        columns: &ColumnMap,
        dt: Option<f64>,
    ) -> Result<Trajectory, CliError> {
        for p in inputs {
            if !self.files.contains_key(p) {
                self.files.insert(p.clone(), load_csv(p, columns, dt)?);
            }
            if let Some(t) = self.files[p].iter().find(|t| t.object_id() == id) {
                return Ok(t.clone());
            }
        }
        Err(QtcError::UnknownObject(id.to_string()).into())
    }
}
