#![allow(dead_code)]

use qtc3d::analysis::{LabeledPair, PairClass};
use qtc3d::geometry::{RotationMatrix, Vec3};
use qtc3d::trajectory::{synth_follower, synth_leader, synth_nonfollower, SynthConfig, Trajectory, TrajectoryPair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn traj(id: &str, ps: &[Vec3]) -> Trajectory {
    Trajectory::from_positions(id, ps, 0.0, 0.2).unwrap()
}

pub fn pair(k: &[Vec3], l: &[Vec3]) -> TrajectoryPair {
    TrajectoryPair::new(traj("k", k), traj("l", l)).unwrap()
}

/// Random walk with unit-scale steps; generic enough that no two
/// consecutive displacements are parallel.
pub fn random_walk(r: &mut impl Rng, n: usize, planar: bool) -> Vec<Vec3> {
    let mut p = Vec3::new(r.random_range(-10.0..10.0), r.random_range(-10.0..10.0), 0.0);
    if !planar {
        p.z = r.random_range(-10.0..10.0);
    }
    let mut out = vec![p];
    for _ in 1..n {
        let z = if planar { 0.0 } else { r.random_range(-1.0..1.0) };
        p += Vec3::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0), z);
        out.push(p);
    }
    out
}

pub fn random_pair(r: &mut impl Rng, n: usize, planar: bool) -> TrajectoryPair {
    let k = random_walk(r, n, planar);
    let l = random_walk(r, n, planar);
    pair(&k, &l)
}

/// Uniformly distributed rotation from a random unit quaternion.
pub fn random_rotation(r: &mut impl Rng) -> RotationMatrix {
    let (u1, u2, u3): (f64, f64, f64) = (r.random(), r.random(), r.random());
    let tau = std::f64::consts::TAU;
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let (w, x, y, z) = (a * (tau * u2).sin(), a * (tau * u2).cos(), b * (tau * u3).sin(), b * (tau * u3).cos());
    RotationMatrix::from_rows([
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - z * w), 2.0 * (x * z + y * w)],
        [2.0 * (x * y + z * w), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - x * w)],
        [2.0 * (x * z - y * w), 2.0 * (y * z + x * w), 1.0 - 2.0 * (x * x + y * y)],
    ])
}

pub fn synth_cfg(seed: u64) -> SynthConfig {
    SynthConfig { rng_seed: seed, ..SynthConfig::default() }
}

pub fn lf_pair(seed: u64) -> TrajectoryPair {
    let c = synth_cfg(seed);
    let l = synth_leader(&c).unwrap();
    let f = synth_follower(&l, &c).unwrap();
    TrajectoryPair::new(l, f).unwrap()
}

pub fn lnf_pair(seed: u64) -> TrajectoryPair {
    let c = synth_cfg(seed);
    TrajectoryPair::new(synth_leader(&c).unwrap(), synth_nonfollower(&c).unwrap()).unwrap()
}

/// Five leader-follower pairs from seeds `first..first+5` and five
/// leader-nonfollower pairs from the next five seeds.
pub fn seed_set(first: u64) -> Vec<LabeledPair> {
    let mut out = Vec::new();
    for s in first..first + 5 {
        out.push(LabeledPair { label: format!("lf{s}"), class: PairClass::LeaderFollower, pair: lf_pair(s) });
    }
    for s in first + 5..first + 10 {
        out.push(LabeledPair { label: format!("lnf{s}"), class: PairClass::LeaderNonfollower, pair: lnf_pair(s) });
    }
    out
}

pub fn deg_grid(from: u32, to: u32, step: u32) -> Vec<f64> {
    (from..=to).step_by(step as usize).map(|d| (d as f64).to_radians()).collect()
}
