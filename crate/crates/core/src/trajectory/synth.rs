//! Seeded generators for leader, follower and independent flight curves.
//!
//! A flight moves at constant speed. Each step its heading is rotated by
//! `a ~ N(0, turn_rate)` about an axis perpendicular to the heading; the
//! axis is tilted away from the local vertical by a bank angle that itself
//! random-walks (same step distribution) inside `[-MAX_BANK, MAX_BANK]`.
//! Pitch is kept within `max_pitch` by mirroring the axis when a step
//! would leave the band, so the angle between consecutive tangents is
//! exactly `|a|`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::Trajectory;
use crate::error::{QtcError, Result};
use crate::geometry::{RotationMatrix, Vec3};

const STREAM_LEADER: u64 = 1;
const STREAM_FOLLOWER: u64 = 2;
const STREAM_NONFOLLOWER: u64 = 3;

const MAX_BANK: f64 = std::f64::consts::FRAC_PI_4;
const START_SPREAD: f64 = 50.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub n_samples: usize,
    /// Seconds between samples.
    pub dt: f64,
    /// Meters travelled per sample.
    pub speed: f64,
    /// Std-dev of the per-sample turn and bank increments, radians.
    pub leader_turn_rate: f64,
    /// Whole samples the follower lags behind the leader.
    pub follower_delay: usize,
    /// Per-axis std-dev of follower position noise, meters.
    pub follower_noise: f64,
    /// World-fixed displacement of the follower from the delayed leader.
    pub follower_offset: Vec3,
    /// Bound on |pitch| of the heading, radians.
    pub max_pitch: f64,
    pub rng_seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            n_samples: 2000,
            dt: 0.2,
            speed: 5.0,
            leader_turn_rate: 0.3,
            follower_delay: 0,
            follower_noise: 0.1,
            follower_offset: Vec3::new(0.0, 2.0, 0.0),
            max_pitch: 30f64.to_radians(),
            rng_seed: 1,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(QtcError::InvalidArgument(msg.into()));
        if self.n_samples < 10 {
            return bad("n_samples must be at least 10");
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt must be positive");
        }
        if !(self.speed > 0.0 && self.speed.is_finite()) {
            return bad("speed must be positive");
        }
        if !(self.leader_turn_rate >= 0.0 && self.leader_turn_rate.is_finite()) {
            return bad("leader_turn_rate must be non-negative");
        }
        if !(self.follower_noise >= 0.0 && self.follower_noise.is_finite()) {
            return bad("follower_noise must be non-negative");
        }
        if self.follower_delay >= self.n_samples {
            return bad("follower_delay must be shorter than the trajectory");
        }
        if !(self.max_pitch > 0.0 && self.max_pitch < std::f64::consts::FRAC_PI_2) {
            return bad("max_pitch must lie in (0, pi/2)");
        }
        if !self.follower_offset.is_finite() {
            return bad("follower_offset must be finite");
        }
        Ok(())
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_flight(cfg: &SynthConfig, stream: u64, id: &str) -> Result<Trajectory> {
    cfg.validate()?;
    let mut rng = rng_for(cfg.rng_seed, stream);
    let step = Normal::new(0.0, cfg.leader_turn_rate)
        .map_err(|e| QtcError::InvalidArgument(e.to_string()))?;

    let yaw: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let mut heading = Vec3::new(yaw.cos(), yaw.sin(), 0.0);
    let mut bank = 0.0_f64;
    let mut pos = Vec3::new(
        rng.random_range(-START_SPREAD..START_SPREAD),
        rng.random_range(-START_SPREAD..START_SPREAD),
        rng.random_range(0.0..10.0),
    );

    let mut positions = Vec::with_capacity(cfg.n_samples);
    positions.push(pos);
    for _ in 1..cfg.n_samples {
        pos += heading * cfg.speed;
        positions.push(pos);

        let turn = step.sample(&mut rng);
        bank = reflect(bank + step.sample(&mut rng), MAX_BANK);

        // heading stays off-vertical thanks to the pitch bound
        let up = (Vec3::Z - heading * heading.z).normalize(1e-12)?;
        let side = heading.cross(up);
        let (sb, cb) = bank.sin_cos();
        let mut next = RotationMatrix::about_axis(up * cb + side * sb, turn).apply(heading);
        if next.z.abs() > cfg.max_pitch.sin() {
            next = RotationMatrix::about_axis(up * cb - side * sb, turn).apply(heading);
        }
        heading = next.normalize(1e-12)?;
    }
    Trajectory::from_positions(id, &positions, 0.0, cfg.dt)
}

/// Folds `x` back into `[-bound, bound]`.
fn reflect(x: f64, bound: f64) -> f64 {
    let period = 4.0 * bound;
    let y = (x + bound).rem_euclid(period);
    if y <= 2.0 * bound {
        y - bound
    } else {
        3.0 * bound - y
    }
}

/// Constant-speed flight with a bounded random-walk heading.
pub fn synth_leader(cfg: &SynthConfig) -> Result<Trajectory> {
    random_flight(cfg, STREAM_LEADER, "leader")
}

/// Independent flight drawn from its own random stream.
pub fn synth_nonfollower(cfg: &SynthConfig) -> Result<Trajectory> {
    random_flight(cfg, STREAM_NONFOLLOWER, "nonfollower")
}

/// `leader(τ - delay) + offset + noise`. Before the leader's first sample
/// its initial velocity is extrapolated backwards.
pub fn synth_follower(leader: &Trajectory, cfg: &SynthConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let n = leader.len();
    if cfg.follower_delay >= n {
        return Err(QtcError::InvalidArgument(
            "follower_delay must be shorter than the leader".into(),
        ));
    }
    let mut rng = rng_for(cfg.rng_seed, STREAM_FOLLOWER);
    let noise = Normal::new(0.0, cfg.follower_noise)
        .map_err(|e| QtcError::InvalidArgument(e.to_string()))?;
    let v0 = leader.displacement(0);
    let p0 = leader.position(0);
    let d = cfg.follower_delay;

    let samples = leader
        .samples()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let base = if i >= d {
                leader.position(i - d)
            } else {
                p0 - v0 * (d - i) as f64
            };
            let jitter = if cfg.follower_noise > 0.0 {
                Vec3::new(noise.sample(&mut rng), noise.sample(&mut rng), noise.sample(&mut rng))
            } else {
                Vec3::ZERO
            };
            super::Sample { t: s.t, p: base + cfg.follower_offset + jitter }
        })
        .collect();
    Trajectory::new("follower", samples, Some(leader.dt()))
}
