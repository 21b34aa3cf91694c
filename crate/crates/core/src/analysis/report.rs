//! Plot-ready CSV for entropy reports, sweeps and angle histograms. JSON
//! goes through the serde derives on the same types.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{entropy_ratio, AngleHistogram, EntropyReport, PairClass, SweepResult};
use crate::error::{QtcError, Result};

/// Per-pair entropies at one threshold plus the class ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    /// Radians.
    pub th: f64,
    pub reports: Vec<EntropyReport>,
    pub ratio: Option<f64>,
}

impl AnalysisReport {
    /// Collects reports; the ratio is present when both classes are
    /// populated and the denominator is nonzero.
    pub fn new(th: f64, reports: Vec<EntropyReport>) -> Self {
        let of = |c: PairClass| -> Vec<f64> {
            reports.iter().filter(|r| r.class == c).map(|r| r.entropy).collect()
        };
        let ratio = entropy_ratio(&of(PairClass::LeaderFollower), &of(PairClass::LeaderNonfollower)).ok();
        Self { th, reports, ratio }
    }
}

fn csv_err(e: csv::Error) -> QtcError {
    QtcError::Io(e.into())
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Columns `label,class,th_rad,th_deg,entropy,ratio`; the final
/// `summary` row carries the ratio.
pub fn write_reports_csv<W: Write>(report: &AnalysisReport, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["label", "class", "th_rad", "th_deg", "entropy", "ratio"]).map_err(csv_err)?;
    for r in &report.reports {
        w.write_record([
            r.pair_label.clone(),
            r.class.to_string(),
            r.th.to_string(),
            r.th.to_degrees().to_string(),
            r.entropy.to_string(),
            String::new(),
        ])
        .map_err(csv_err)?;
    }
    w.write_record([
        "*".to_string(),
        "summary".to_string(),
        report.th.to_string(),
        report.th.to_degrees().to_string(),
        String::new(),
        opt(report.ratio),
    ])
    .map_err(csv_err)?;
    w.flush()?;
    Ok(())
}

pub fn write_sweep_csv<W: Write>(result: &SweepResult, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "th_rad", "th_deg", "lf_n", "lf_mean", "lf_mean_plus_std", "lf_mean_minus_std", "lnf_n",
        "lnf_mean", "lnf_mean_plus_std", "lnf_mean_minus_std", "ratio",
    ])
    .map_err(csv_err)?;
    for r in &result.rows {
        let (a, b) = (r.leader_follower, r.leader_nonfollower);
        w.write_record([
            r.th.to_string(),
            r.th.to_degrees().to_string(),
            a.n.to_string(),
            a.mean.to_string(),
            (a.mean + a.std).to_string(),
            (a.mean - a.std).to_string(),
            b.n.to_string(),
            b.mean.to_string(),
            (b.mean + b.std).to_string(),
            (b.mean - b.std).to_string(),
            opt(r.ratio),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `lower_deg,upper_deg,psi,theta,phi`.
pub fn write_angle_histogram_csv<W: Write>(h: &AngleHistogram, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["lower_deg", "upper_deg", "psi", "theta", "phi"]).map_err(csv_err)?;
    for (i, lo) in h.lower_edges().into_iter().enumerate() {
        w.write_record([
            lo.to_string(),
            (lo + h.bin_width).to_string(),
            h.psi[i].to_string(),
            h.theta[i].to_string(),
            h.phi[i].to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
