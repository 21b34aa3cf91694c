//! Uniformly sampled trajectories of moving point objects.

mod csv;
mod synth;

pub use self::csv::{load_csv, read_csv, write_csv, ColumnMap};
pub use self::synth::{synth_follower, synth_leader, synth_nonfollower, SynthConfig};

use serde::{Deserialize, Serialize};

use crate::error::{QtcError, Result};
use crate::geometry::Vec3;

/// Minimum sample count: one discrete frame needs three positions.
pub const MIN_SAMPLES: usize = 3;

/// Relative tolerance on sampling-interval deviations.
pub const SAMPLING_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub p: Vec3,
}

/// An immutable, validated trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    object_id: String,
    samples: Vec<Sample>,
    dt: f64,
}

impl Trajectory {
    /// Validates and wraps `samples`. When `dt` is `None` the interval is
    /// taken from the first two timestamps.
    pub fn new(object_id: impl Into<String>, samples: Vec<Sample>, dt: Option<f64>) -> Result<Self> {
        let object_id = object_id.into();
        if samples.len() < MIN_SAMPLES {
            return Err(QtcError::TooShort { object_id, len: samples.len() });
        }
        if let Some(s) = samples.iter().find(|s| !s.t.is_finite() || !s.p.is_finite()) {
            return Err(QtcError::InvalidArgument(format!(
                "non-finite sample in '{object_id}' at t = {}",
                s.t
            )));
        }
        let dt = dt.unwrap_or(samples[1].t - samples[0].t);
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(QtcError::NonUniformSampling { object_id, t: samples[1].t });
        }
        for w in samples.windows(2) {
            if (w[1].t - w[0].t - dt).abs() >= SAMPLING_TOLERANCE * dt {
                return Err(QtcError::NonUniformSampling { object_id, t: w[1].t });
            }
        }
        Ok(Self { object_id, samples, dt })
    }

    /// Positions sampled every `dt` seconds starting at `t0`.
    pub fn from_positions(
        object_id: impl Into<String>,
        positions: &[Vec3],
        t0: f64,
        dt: f64,
    ) -> Result<Self> {
        let samples = positions
            .iter()
            .enumerate()
            .map(|(i, &p)| Sample { t: t0 + i as f64 * dt, p })
            .collect();
        Self::new(object_id, samples, Some(dt))
    }

    pub fn object_id(&self) -> &str {
        &self.object_id
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn position(&self, i: usize) -> Vec3 {
        self.samples[i].p
    }

    pub fn positions(&self) -> impl Iterator<Item = Vec3> + '_ {
        self.samples.iter().map(|s| s.p)
    }

    /// Forward displacement `x(i+1) - x(i)`.
    pub fn displacement(&self, i: usize) -> Vec3 {
        self.samples[i + 1].p - self.samples[i].p
    }

    /// Same samples with every position mapped through `f`.
    pub fn map_positions(&self, f: impl Fn(Vec3) -> Vec3) -> Self {
        Self {
            object_id: self.object_id.clone(),
            samples: self.samples.iter().map(|s| Sample { t: s.t, p: f(s.p) }).collect(),
            dt: self.dt,
        }
    }

    pub fn with_id(mut self, object_id: impl Into<String>) -> Self {
        self.object_id = object_id.into();
        self
    }

    fn window(&self, start: usize, count: usize) -> Result<Self> {
        let end = start.checked_add(count).filter(|&e| e <= self.len());
        match end {
            Some(end) => Self::new(
                self.object_id.clone(),
                self.samples[start..end].to_vec(),
                Some(self.dt),
            ),
            None => Err(QtcError::OutOfRange { start, count, len: self.len() }),
        }
    }
}

/// Two synchronized trajectories: object `k` and object `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPair {
    k: Trajectory,
    l: Trajectory,
}

impl TrajectoryPair {
    pub fn new(k: Trajectory, l: Trajectory) -> Result<Self> {
        if k.len() != l.len() {
            return Err(QtcError::Unsynchronized(format!(
                "sample counts differ ({} vs {})",
                k.len(),
                l.len()
            )));
        }
        if (k.dt - l.dt).abs() >= SAMPLING_TOLERANCE * k.dt {
            return Err(QtcError::Unsynchronized(format!(
                "sampling intervals differ ({} vs {})",
                k.dt, l.dt
            )));
        }
        Ok(Self { k, l })
    }

    pub fn k(&self) -> &Trajectory {
        &self.k
    }

    pub fn l(&self) -> &Trajectory {
        &self.l
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    /// The same pair with the roles of `k` and `l` exchanged.
    pub fn swapped(&self) -> Self {
        Self { k: self.l.clone(), l: self.k.clone() }
    }

    pub fn map_positions(&self, f: impl Fn(Vec3) -> Vec3) -> Self {
        Self { k: self.k.map_positions(&f), l: self.l.map_positions(&f) }
    }
}

/// Cuts both trajectories to samples `[start, start + count)`.
pub fn truncate_sync(pair: &TrajectoryPair, start: usize, count: usize) -> Result<TrajectoryPair> {
    TrajectoryPair::new(pair.k.window(start, count)?, pair.l.window(start, count)?)
}

/// Start index of a `count`-sample window centered in `len` samples.
pub fn centered_start(len: usize, count: usize) -> Result<usize> {
    if count > len {
        return Err(QtcError::OutOfRange { start: 0, count, len });
    }
    Ok((len - count) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(id: &str, n: usize) -> Trajectory {
        let ps: Vec<Vec3> = (0..n).map(|i| Vec3::new(i as f64, 0.0, 0.0)).collect();
        Trajectory::from_positions(id, &ps, 0.0, 0.2).unwrap()
    }

    #[test]
    fn rejects_short_and_irregular() {
        let s = |t: f64| Sample { t, p: Vec3::ZERO };
        assert!(matches!(
            Trajectory::new("a", vec![s(0.0), s(0.2)], None),
            Err(QtcError::TooShort { len: 2, .. })
        ));
        assert!(matches!(
            Trajectory::new("a", vec![s(0.0), s(0.2), s(0.2)], None),
            Err(QtcError::NonUniformSampling { .. })
        ));
        assert!(matches!(
            Trajectory::new("a", vec![s(0.0), s(0.2), s(0.5)], None),
            Err(QtcError::NonUniformSampling { t, .. }) if t == 0.5
        ));
    }

    #[test]
    fn truncation_window() {
        let pair = TrajectoryPair::new(line("k", 5000), line("l", 5000)).unwrap();
        let start = centered_start(5000, 2000).unwrap();
        assert_eq!(start, 1500);
        let cut = truncate_sync(&pair, start, 2000).unwrap();
        assert_eq!(cut.len(), 2000);
        assert_eq!(cut.k().position(0), pair.k().position(1500));
        assert_eq!(cut.l().samples().last().unwrap().p, pair.l().position(3499));

        assert_eq!(truncate_sync(&pair, 0, 5000).unwrap(), pair);
        assert!(matches!(truncate_sync(&pair, 0, 5001), Err(QtcError::OutOfRange { .. })));
        assert!(matches!(truncate_sync(&pair, 4000, 2000), Err(QtcError::OutOfRange { .. })));
    }

    #[test]
    fn pair_requires_sync() {
        assert!(TrajectoryPair::new(line("k", 10), line("l", 11)).is_err());
    }
}
