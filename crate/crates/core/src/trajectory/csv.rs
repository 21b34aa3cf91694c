//! Trajectory CSV: header `id,t,x,y,z` (`z` optional), one row per
//! object and timestamp.

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Sample, Trajectory};
use crate::error::{QtcError, Result};
use crate::geometry::Vec3;

/// Header names of the columns holding each field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnMap {
    pub id: String,
    pub t: String,
    pub x: String,
    pub y: String,
    /// Missing from the file means a planar trajectory at z = 0.
    pub z: String,
}

impl Default for ColumnMap {
    fn default() -> Self {
        Self {
            id: "id".into(),
            t: "t".into(),
            x: "x".into(),
            y: "y".into(),
            z: "z".into(),
        }
    }
}

pub fn load_csv(path: impl AsRef<Path>, columns: &ColumnMap, dt: Option<f64>) -> Result<Vec<Trajectory>> {
    read_csv(File::open(path)?, columns, dt)
}

/// Parses trajectories from any reader. Objects come back in order of first
/// appearance; samples are sorted by time before validation.
pub fn read_csv<R: Read>(reader: R, columns: &ColumnMap, dt: Option<f64>) -> Result<Vec<Trajectory>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| QtcError::Parse { line: 1, message: e.to_string() })?
        .clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let require = |name: &str| {
        find(name).ok_or_else(|| QtcError::Parse {
            line: 1,
            message: format!("missing column '{name}'"),
        })
    };
    let (ci, ct, cx, cy) = (require(&columns.id)?, require(&columns.t)?, require(&columns.x)?, require(&columns.y)?);
    let cz = find(&columns.z);

    let mut order: Vec<String> = Vec::new();
    let mut groups: HashMap<String, Vec<Sample>> = HashMap::new();
    for record in rdr.records() {
        let record = record.map_err(|e| QtcError::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize, name: &str| -> Result<f64> {
            let raw = record.get(i).unwrap_or("");
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| QtcError::Parse {
                    line,
                    message: format!("invalid value '{raw}' in column '{name}'"),
                })
        };
        let id = record.get(ci).unwrap_or("").to_string();
        if id.is_empty() {
            return Err(QtcError::Parse { line, message: "empty object id".into() });
        }
        let t = field(ct, &columns.t)?;
        let z = match cz {
            Some(i) => field(i, &columns.z)?,
            None => 0.0,
        };
        let p = Vec3::new(field(cx, &columns.x)?, field(cy, &columns.y)?, z);
        groups
            .entry(id.clone())
            .or_insert_with(|| {
                order.push(id);
                Vec::new()
            })
            .push(Sample { t, p });
    }

    order
        .into_iter()
        .map(|id| {
            let mut samples = groups.remove(&id).unwrap_or_default();
            samples.sort_by(|a, b| a.t.total_cmp(&b.t));
            Trajectory::new(id, samples, dt)
        })
        .collect()
}

/// Writes trajectories in the loader's schema. Floats use the shortest
/// representation that parses back to the same value.
pub fn write_csv<W: Write>(trajectories: &[Trajectory], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let csv_err = |e: csv::Error| QtcError::Io(e.into());
    w.write_record(["id", "t", "x", "y", "z"]).map_err(csv_err)?;
    for traj in trajectories {
        for s in traj.samples() {
            w.write_record([
                traj.object_id().to_string(),
                s.t.to_string(),
                s.p.x.to_string(),
                s.p.y.to_string(),
                s.p.z.to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}
