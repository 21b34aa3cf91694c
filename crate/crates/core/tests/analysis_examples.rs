mod common;

use common::*;
use qtc3d::analysis::{
    angle_histograms, circular_std_dev, classify, sweep, triplet_histogram, AnalysisOptions,
    PairClass, SymbolHistogram, ZERO_TRIPLET,
};
use qtc3d::frenet::{FrameOptions, TransformMode};
use qtc3d::geometry::Vec3;
use qtc3d::qtc::{encode, EncodeConfig, Thresholds};
use qtc3d::trajectory::{synth_follower, synth_leader, SynthConfig, TrajectoryPair};

fn spread(p: &TrajectoryPair) -> f64 {
    let angles = qtc3d::qtc::relative_angles(p, TransformMode::WorldFrame, &FrameOptions::default()).unwrap();
    let a: Vec<_> = angles.into_iter().flatten().collect();
    let psi: Vec<f64> = a.iter().map(|x| x.psi).collect();
    let theta: Vec<f64> = a.iter().map(|x| x.theta).collect();
    let phi: Vec<f64> = a.iter().map(|x| x.phi).collect();
    circular_std_dev(&psi) + circular_std_dev(&theta) + circular_std_dev(&phi)
}

#[test]
fn offset_copy_fills_central_bins() {
    let c = SynthConfig { follower_noise: 0.0, follower_offset: Vec3::new(3.0, -1.0, 0.5), ..synth_cfg(2) };
    let l = synth_leader(&c).unwrap();
    let f = synth_follower(&l, &c).unwrap();
    let p = TrajectoryPair::new(l, f).unwrap();
    let h = angle_histograms(&p, TransformMode::WorldFrame, &FrameOptions::default(), 8.0).unwrap();
    assert_eq!(h.bins(), 45);
    let n = (p.len() - 2) as u64;
    let c = h.center_bin();
    assert_eq!((h.psi[c], h.theta[c], h.phi[c]), (n, n, n));
}

#[test]
fn independent_pairs_spread_wider() {
    for seed in 1..=20 {
        assert!(spread(&lnf_pair(seed)) > spread(&lf_pair(seed)), "seed {seed}");
    }
}

#[test]
fn follower_mode_is_all_zero_triplet() {
    let cfg = EncodeConfig {
        thresholds: Thresholds { tait_bryan: 10f64.to_radians(), ..Thresholds::default() },
        ..EncodeConfig::default()
    };
    for seed in 1..=10 {
        let h = triplet_histogram(&encode(&lf_pair(seed), &cfg).unwrap()).unwrap();
        let modal = (0..27).max_by_key(|&b| h.counts[b]).unwrap();
        assert_eq!(modal, ZERO_TRIPLET, "seed {seed}: {:?}", SymbolHistogram::triplet(modal));
    }
}

#[test]
fn midpoint_classifier_cross_validation() {
    let th = 10f64.to_radians();
    let opts = AnalysisOptions::default();
    let refs_lf: Vec<_> = (101..106).map(lf_pair).collect();
    let refs_lnf: Vec<_> = (106..111).map(lnf_pair).collect();
    let mut hits_lf = 0;
    let mut hits_lnf = 0;
    for seed in 1..=20 {
        if classify(&lf_pair(seed), &refs_lf, &refs_lnf, th, &opts).unwrap().class == PairClass::LeaderFollower {
            hits_lf += 1;
        }
        if classify(&lnf_pair(seed), &refs_lf, &refs_lnf, th, &opts).unwrap().class == PairClass::LeaderNonfollower {
            hits_lnf += 1;
        }
    }
    assert!(hits_lf >= 18, "{hits_lf}");
    assert!(hits_lnf >= 18, "{hits_lnf}");
}

#[test]
fn zero_threshold_sweep_is_near_three_bits() {
    // only the 8 fully nonzero triplets can occur
    let res = sweep(&seed_set(1), &[0.0], &AnalysisOptions::default()).unwrap();
    let row = res.rows[0];
    for mean in [row.leader_follower.mean, row.leader_nonfollower.mean] {
        assert!(mean > 2.9 && mean <= 3.0, "{mean}");
    }
}

#[test]
fn sweep_ratio_below_one_on_working_range() {
    let grid = deg_grid(0, 40, 2);
    let res = sweep(&seed_set(1), &grid, &AnalysisOptions::default()).unwrap();
    for row in &res.rows {
        let deg = row.th.to_degrees();
        if (5.0..=30.0).contains(&deg) {
            assert!(row.ratio.unwrap() < 1.0, "{deg}: {:?}", row.ratio);
            assert!(row.leader_follower.mean < row.leader_nonfollower.mean);
        }
    }
    assert!(res.rows.iter().all(|r| r.leader_nonfollower.mean <= 27f64.log2()));
}
