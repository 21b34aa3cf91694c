mod common;

use common::*;
use proptest::prelude::*;
use qtc3d::frenet::{FrameOptions, TransformMode};
use qtc3d::geometry::Vec3;
use qtc3d::qtc::{
    constraint_a, constraint_b, constraint_c, constraint_d, constraint_e, constraint_f, encode,
    quantize, relative_angles, Constraint, EncodeConfig, QtcSymbol, Thresholds, Variant,
};

const EPS: f64 = 1e-9;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn swapping_roles_is_dual(seed in any::<u64>(), th in 0.0..0.5f64) {
        let mut r = rng(seed);
        let p = random_pair(&mut r, 4, true);
        let q = p.swapped();
        for tau in 0..3 {
            prop_assert_eq!(constraint_a(&p, tau, th, EPS).unwrap(), constraint_b(&q, tau, th, EPS).unwrap());
            prop_assert_eq!(constraint_b(&p, tau, th, EPS).unwrap(), constraint_a(&q, tau, th, EPS).unwrap());
            prop_assert_eq!(constraint_d(&p, tau, th, EPS).unwrap(), constraint_e(&q, tau, th, EPS).unwrap());
            prop_assert_eq!(constraint_c(&p, tau, th).unwrap().symbol, constraint_c(&q, tau, th).unwrap().symbol.negate());
            prop_assert_eq!(constraint_f(&p, tau, th, EPS).unwrap().symbol, constraint_f(&q, tau, th, EPS).unwrap().symbol.negate());
        }
    }

    #[test]
    fn raising_thresholds_only_adds_zeros(seed in any::<u64>(), scale in 1.0..4.0f64) {
        let mut r = rng(seed);
        let p = random_pair(&mut r, 12, false);
        let low = Thresholds { dist: 0.05, speed: 0.05, side: 0.05, angle_f: 0.05, tait_bryan: 0.05 };
        let high = Thresholds {
            dist: low.dist * scale,
            speed: low.speed * scale,
            side: low.side * scale,
            angle_f: low.angle_f * scale,
            tait_bryan: low.tait_bryan * scale,
        };
        let enc = |th| encode(&p, &EncodeConfig { thresholds: th, ..EncodeConfig::default() }).unwrap();
        let (a, b) = (enc(low), enc(high));
        for (x, y) in a.tuples.iter().zip(&b.tuples) {
            for (s, t) in x.symbols.iter().zip(&y.symbols) {
                prop_assert!(*s != QtcSymbol::Zero || *t == QtcSymbol::Zero);
                prop_assert!(*t == QtcSymbol::Zero || t == s);
            }
        }
    }

    #[test]
    fn quantize_is_odd_and_monotone(x in -10.0..10.0f64, th in 0.0..5.0f64, extra in 0.0..5.0f64) {
        prop_assert_eq!(quantize(-x, th), quantize(x, th).negate());
        if quantize(x, th) == QtcSymbol::Zero {
            prop_assert_eq!(quantize(x, th + extra), QtcSymbol::Zero);
        }
    }

    #[test]
    fn body_mode_angles_ignore_global_rotation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_pair(&mut r, 15, false);
        let rot = random_rotation(&mut r);
        let q = p.map_positions(|v| rot.apply(v));
        let opts = FrameOptions::default();
        let a = relative_angles(&p, TransformMode::BodyFrame, &opts).unwrap();
        let b = relative_angles(&q, TransformMode::BodyFrame, &opts).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(x.unwrap().max_abs_diff(y.unwrap()) < 1e-9);
        }
    }
}

#[test]
fn translation_keeps_every_symbol() {
    for seed in 0..10 {
        let p = lf_pair(seed);
        let q = p.map_positions(|v| v + Vec3::new(123.25, -47.5, 8.0));
        for mode in [TransformMode::WorldFrame, TransformMode::BodyFrame] {
            let cfg = EncodeConfig { mode, ..EncodeConfig::default() };
            assert_eq!(encode(&p, &cfg).unwrap().symbol_strings(), encode(&q, &cfg).unwrap().symbol_strings());
        }
    }
}

#[test]
fn three_d_variant_shares_planar_constraints() {
    let mut r = rng(17);
    let p = random_pair(&mut r, 40, true);
    let c2 = encode(&p, &EncodeConfig { variant: Variant::C2, ..EncodeConfig::default() }).unwrap();
    let d3 = encode(&p, &EncodeConfig::default()).unwrap();
    assert_eq!(d3.len() + 1, c2.len());
    for t in &d3.tuples {
        let u = &c2.tuples[t.tau];
        for c in [Constraint::A, Constraint::B, Constraint::C, Constraint::F] {
            assert_eq!(t.get(c), u.get(c));
        }
        // binormals stay vertical, so there is no pitch
        assert!(t.get(Constraint::H) == Some(QtcSymbol::Zero));
    }
}
