//! Per-timestep constraint evaluation.
//!
//! A and B compare the next position of one object with the current
//! position of the other; C compares per-sample displacement lengths; D and
//! E take the sign of the planar cross product of the connecting line with
//! the displacement; F compares the angles each displacement makes with the
//! connecting line.

use super::{quantize, QtcSymbol, Warnings};
use crate::error::{QtcError, Result};
use crate::frenet::{frame_transform, FrenetFrame, TransformMode};
use crate::geometry::{extract_tait_bryan, TaitBryanAngles, Vec3};
use crate::trajectory::TrajectoryPair;

/// A symbol together with the reasons it may be unmeasured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub symbol: QtcSymbol,
    pub warnings: Warnings,
}

impl Relation {
    fn measured(symbol: QtcSymbol) -> Self {
        Self { symbol, warnings: Warnings::empty() }
    }

    fn undefined(warnings: Warnings) -> Self {
        Self { symbol: QtcSymbol::Zero, warnings }
    }
}

pub(crate) fn distance(k0: Vec3, k1: Vec3, l0: Vec3, th: f64, eps: f64) -> Relation {
    let before = (k0 - l0).norm();
    if before < eps {
        return Relation::undefined(Warnings::COINCIDENT);
    }
    Relation::measured(quantize((k1 - l0).norm() - before, th))
}

pub(crate) fn speed(k0: Vec3, k1: Vec3, l0: Vec3, l1: Vec3, th: f64) -> Relation {
    Relation::measured(quantize((k1 - k0).norm() - (l1 - l0).norm(), th))
}

/// `+` when `k` moves to the right of the directed line `k -> l`.
pub(crate) fn side(k0: Vec3, k1: Vec3, l0: Vec3, th: f64, eps: f64) -> Relation {
    let u = l0 - k0;
    let v = k1 - k0;
    let u_len = u.norm();
    if u_len < eps {
        return Relation::undefined(Warnings::COINCIDENT);
    }
    let c = u.x * v.y - u.y * v.x;
    Relation::measured(quantize(-c, th * u_len * v.norm()))
}

pub(crate) fn angle(k0: Vec3, k1: Vec3, l0: Vec3, l1: Vec3, th: f64, eps: f64) -> Relation {
    let (vk, vl) = (k1 - k0, l1 - l0);
    let kl = l0 - k0;
    let mut warnings = Warnings::empty();
    if vk.norm() < eps || vl.norm() < eps {
        warnings |= Warnings::STATIONARY;
    }
    if kl.norm() < eps {
        warnings |= Warnings::COINCIDENT;
    }
    if !warnings.is_empty() {
        return Relation::undefined(warnings);
    }
    let theta1 = vk.angle_to(kl);
    let theta2 = vl.angle_to(k0 - l0);
    Relation::measured(quantize(theta1 - theta2, th))
}

struct Step {
    k0: Vec3,
    k1: Vec3,
    l0: Vec3,
    l1: Vec3,
}

fn step(pair: &TrajectoryPair, tau: usize) -> Result<Step> {
    if tau + 1 >= pair.len() {
        return Err(QtcError::OutOfRange { start: tau, count: 2, len: pair.len() });
    }
    Ok(Step {
        k0: pair.k().position(tau),
        k1: pair.k().position(tau + 1),
        l0: pair.l().position(tau),
        l1: pair.l().position(tau + 1),
    })
}

fn check_planar(s: &Step, tau: usize, eps: f64) -> Result<()> {
    for z in [s.k0.z, s.k1.z, s.l0.z, s.l1.z] {
        if z.abs() > eps {
            return Err(QtcError::NotPlanar { index: tau, z });
        }
    }
    Ok(())
}

/// Distance constraint for `k`: `-` approaching `l`, `+` receding.
pub fn constraint_a(pair: &TrajectoryPair, tau: usize, th: f64, eps: f64) -> Result<Relation> {
    let s = step(pair, tau)?;
    Ok(distance(s.k0, s.k1, s.l0, th, eps))
}

/// Distance constraint for `l`.
pub fn constraint_b(pair: &TrajectoryPair, tau: usize, th: f64, eps: f64) -> Result<Relation> {
    let s = step(pair, tau)?;
    Ok(distance(s.l0, s.l1, s.k0, th, eps))
}

/// Speed constraint: `-` when `k` is slower than `l`.
pub fn constraint_c(pair: &TrajectoryPair, tau: usize, th: f64) -> Result<Relation> {
    let s = step(pair, tau)?;
    Ok(speed(s.k0, s.k1, s.l0, s.l1, th))
}

/// Side constraint for `k` w.r.t. the line `k -> l`; planar input only.
/// `th` is the sine of the smallest angle counted as off the line.
pub fn constraint_d(pair: &TrajectoryPair, tau: usize, th: f64, eps: f64) -> Result<Relation> {
    let s = step(pair, tau)?;
    check_planar(&s, tau, eps)?;
    Ok(side(s.k0, s.k1, s.l0, th, eps))
}

pub fn constraint_e(pair: &TrajectoryPair, tau: usize, th: f64, eps: f64) -> Result<Relation> {
    let s = step(pair, tau)?;
    check_planar(&s, tau, eps)?;
    Ok(side(s.l0, s.l1, s.k0, th, eps))
}

/// Angle constraint: `-` when `k`'s velocity is closer to the connecting
/// line than `l`'s is.
pub fn constraint_f(pair: &TrajectoryPair, tau: usize, th: f64, eps: f64) -> Result<Relation> {
    let s = step(pair, tau)?;
    Ok(angle(s.k0, s.k1, s.l0, s.l1, th, eps))
}

/// Quantizes `(psi, theta, phi)` into `(G, H, I)`.
pub fn quantize_angles(a: TaitBryanAngles, th: f64) -> [QtcSymbol; 3] {
    [quantize(a.psi, th), quantize(a.theta, th), quantize(a.phi, th)]
}

/// `(G, H, I)` for two frames at the same sample.
pub fn constraints_ghi(
    f1: &FrenetFrame,
    f2: &FrenetFrame,
    mode: TransformMode,
    th: f64,
) -> Result<[QtcSymbol; 3]> {
    let t = frame_transform(f1, f2, mode)?;
    Ok(quantize_angles(extract_tait_bryan(&t.rotation), th))
}
