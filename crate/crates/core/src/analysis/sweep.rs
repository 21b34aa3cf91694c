use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{entropy, entropy_ratio, histogram_of_angles, EntropyReport, PairClass};
use crate::error::{QtcError, Result};
use crate::frenet::{FrameOptions, TransformMode};
use crate::geometry::TaitBryanAngles;
use crate::qtc::relative_angles;
use crate::trajectory::TrajectoryPair;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPair {
    pub label: String,
    pub class: PairClass,
    pub pair: TrajectoryPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisOptions {
    pub mode: TransformMode,
    pub frames: FrameOptions,
    /// Drop tuples from undefined frames instead of counting them as zeros.
    pub exclude_undefined: bool,
}

/// Entropy of a pair's `(G, H, I)` distribution at threshold `th`.
pub fn entropy_at(pair: &TrajectoryPair, th: f64, opts: &AnalysisOptions) -> Result<f64> {
    let angles = relative_angles(pair, opts.mode, &opts.frames)?;
    entropy(&histogram_of_angles(&angles, th, !opts.exclude_undefined)?)
}

pub fn entropy_reports(pairs: &[LabeledPair], th: f64, opts: &AnalysisOptions) -> Result<Vec<EntropyReport>> {
    pairs
        .par_iter()
        .map(|p| {
            Ok(EntropyReport {
                pair_label: p.label.clone(),
                class: p.class,
                th,
                entropy: entropy_at(&p.pair, th, opts)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassStats {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single member.
    pub std: f64,
}

impl ClassStats {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Self { n, mean, std }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Radians.
    pub th: f64,
    pub leader_follower: ClassStats,
    pub leader_nonfollower: ClassStats,
    /// Mean LF entropy over mean LNF entropy; `None` when the latter is 0.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn thresholds(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.th).collect()
    }
}

/// Class entropy statistics and ratio at every threshold of `grid`.
/// Unlabeled pairs are ignored.
pub fn sweep(pairs: &[LabeledPair], grid: &[f64], opts: &AnalysisOptions) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(QtcError::InvalidArgument("empty threshold grid".into()));
    }
    if let Some(&bad) = grid.iter().find(|t| !(**t >= 0.0)) {
        return Err(QtcError::InvalidArgument(format!("negative threshold {bad}")));
    }
    for class in [PairClass::LeaderFollower, PairClass::LeaderNonfollower] {
        if !pairs.iter().any(|p| p.class == class) {
            return Err(QtcError::EmptyClass(class));
        }
    }

    // Frames do not depend on the threshold: compute angles once per pair.
    let angles: Vec<(PairClass, Vec<Option<TaitBryanAngles>>)> = pairs
        .par_iter()
        .filter(|p| p.class != PairClass::Unlabeled)
        .map(|p| Ok((p.class, relative_angles(&p.pair, opts.mode, &opts.frames)?)))
        .collect::<Result<_>>()?;

    let rows = grid
        .iter()
        .map(|&th| {
            let mut lf = Vec::new();
            let mut lnf = Vec::new();
            for (class, a) in &angles {
                let e = entropy(&histogram_of_angles(a, th, !opts.exclude_undefined)?)?;
                match class {
                    PairClass::LeaderFollower => lf.push(e),
                    _ => lnf.push(e),
                }
            }
            let ratio = match entropy_ratio(&lf, &lnf) {
                Ok(r) => Some(r),
                Err(QtcError::DivisionByZero) => None,
                Err(e) => return Err(e),
            };
            Ok(SweepRow {
                th,
                leader_follower: ClassStats::of(&lf),
                leader_nonfollower: ClassStats::of(&lnf),
                ratio,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult { rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: PairClass,
    pub entropy: f64,
    pub midpoint: f64,
    /// `midpoint - entropy`: positive on the leader-follower side.
    pub margin: f64,
}

/// Midpoint rule between the two reference class means.
pub fn classify_entropy(entropy: f64, lf: &[f64], lnf: &[f64]) -> Result<Classification> {
    if lf.is_empty() {
        return Err(QtcError::EmptyClass(PairClass::LeaderFollower));
    }
    if lnf.is_empty() {
        return Err(QtcError::EmptyClass(PairClass::LeaderNonfollower));
    }
    let midpoint = (ClassStats::of(lf).mean + ClassStats::of(lnf).mean) / 2.0;
    let margin = midpoint - entropy;
    let class = if margin > 0.0 {
        PairClass::LeaderFollower
    } else {
        PairClass::LeaderNonfollower
    };
    Ok(Classification { class, entropy, midpoint, margin })
}

pub fn classify(
    pair: &TrajectoryPair,
    reference_followers: &[TrajectoryPair],
    reference_nonfollowers: &[TrajectoryPair],
    th: f64,
    opts: &AnalysisOptions,
) -> Result<Classification> {
    let entropies = |refs: &[TrajectoryPair]| -> Result<Vec<f64>> {
        refs.par_iter().map(|p| entropy_at(p, th, opts)).collect()
    };
    classify_entropy(
        entropy_at(pair, th, opts)?,
        &entropies(reference_followers)?,
        &entropies(reference_nonfollowers)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::{synth_follower, synth_leader, synth_nonfollower, SynthConfig};

    fn cfg(seed: u64) -> SynthConfig {
        SynthConfig { n_samples: 600, rng_seed: seed, ..SynthConfig::default() }
    }

    fn lf(seed: u64) -> TrajectoryPair {
        let l = synth_leader(&cfg(seed)).unwrap();
        let f = synth_follower(&l, &cfg(seed)).unwrap();
        TrajectoryPair::new(l, f).unwrap()
    }

    fn lnf(seed: u64) -> TrajectoryPair {
        TrajectoryPair::new(synth_leader(&cfg(seed)).unwrap(), synth_nonfollower(&cfg(seed)).unwrap()).unwrap()
    }

    fn labeled(p: TrajectoryPair, class: PairClass, label: &str) -> LabeledPair {
        LabeledPair { label: label.into(), class, pair: p }
    }

    #[test]
    fn class_stats() {
        let s = ClassStats::of(&[1.0, 2.0, 3.0]);
        assert_eq!((s.n, s.mean, s.std), (3, 2.0, 1.0));
        assert_eq!(ClassStats::of(&[4.0]).std, 0.0);
    }

    #[test]
    fn identical_classes_give_unit_ratio() {
        let pairs = vec![
            labeled(lf(1), PairClass::LeaderFollower, "a"),
            labeled(lf(1), PairClass::LeaderNonfollower, "b"),
        ];
        let grid: Vec<f64> = (0..=20).map(|d| (2.0 * d as f64).to_radians()).collect();
        let res = sweep(&pairs, &grid, &AnalysisOptions::default()).unwrap();
        assert_eq!(res.thresholds(), grid);
        assert!(res.rows.iter().all(|r| r.ratio == Some(1.0)));
    }

    #[test]
    fn zero_threshold_strips_zero_symbols() {
        let pairs = vec![
            labeled(lf(2), PairClass::LeaderFollower, "a"),
            labeled(lnf(2), PairClass::LeaderNonfollower, "b"),
        ];
        let res = sweep(&pairs, &[0.0], &AnalysisOptions::default()).unwrap();
        // only the 8 all-nonzero triplets survive: at most 3 bits
        let row = res.rows[0];
        assert!(row.leader_follower.mean > 2.0 && row.leader_follower.mean <= 3.0 + 1e-9);
        assert!(row.leader_nonfollower.mean > 2.0 && row.leader_nonfollower.mean <= 3.0 + 1e-9);
    }

    #[test]
    fn sweep_requires_both_classes() {
        let pairs = vec![labeled(lf(3), PairClass::LeaderFollower, "a")];
        assert!(matches!(
            sweep(&pairs, &[0.1], &AnalysisOptions::default()),
            Err(QtcError::EmptyClass(PairClass::LeaderNonfollower))
        ));
    }

    #[test]
    fn sweep_is_deterministic() {
        let pairs = vec![
            labeled(lf(4), PairClass::LeaderFollower, "a"),
            labeled(lnf(5), PairClass::LeaderNonfollower, "b"),
            labeled(lnf(6), PairClass::Unlabeled, "c"),
        ];
        let grid = [0.0, 0.1, 0.2];
        let a = sweep(&pairs, &grid, &AnalysisOptions::default()).unwrap();
        let b = sweep(&pairs, &grid, &AnalysisOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows[0].leader_nonfollower.n, 1);
    }

    #[test]
    fn classify_reference_member() {
        let th = 10f64.to_radians();
        let opts = AnalysisOptions::default();
        let c = classify(&lf(7), &[lf(7)], &[lnf(8)], th, &opts).unwrap();
        assert_eq!(c.class, PairClass::LeaderFollower);
        assert!(c.margin > 0.0);
    }

    #[test]
    fn classify_entropy_midpoint() {
        let c = classify_entropy(3.0, &[2.0, 2.5], &[4.0]).unwrap();
        assert_eq!(c.class, PairClass::LeaderFollower);
        assert!((c.midpoint - 3.125).abs() < 1e-15);
        let c = classify_entropy(3.5, &[2.0, 2.5], &[4.0]).unwrap();
        assert_eq!(c.class, PairClass::LeaderNonfollower);
        assert!(classify_entropy(1.0, &[], &[1.0]).is_err());
    }
}
