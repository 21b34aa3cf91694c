use serde::{Deserialize, Serialize};

use super::constraints::{angle, distance, quantize_angles, side, speed, Relation};
use super::{Constraint, QtcSequence, QtcSymbol, QtcTuple, Thresholds, Variant, Warnings};
use crate::error::{QtcError, Result};
use crate::frenet::{discrete_frames, frame_transform, FrameOptions, TransformMode};
use crate::geometry::{extract_tait_bryan, TaitBryanAngles};
use crate::trajectory::TrajectoryPair;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EncodeConfig {
    pub variant: Variant,
    pub thresholds: Thresholds,
    pub mode: TransformMode,
    pub frames: FrameOptions,
}

impl Default for EncodeConfig {
    fn default() -> Self {
        Self {
            variant: Variant::ThreeD,
            thresholds: Thresholds::default(),
            mode: TransformMode::WorldFrame,
            frames: FrameOptions::default(),
        }
    }
}

/// Tait-Bryan angles of the `k -> l` frame rotation at `τ = 1 ..= n-2`
/// (element `i` belongs to `τ = i + 1`). `None` marks an undefined frame.
pub fn relative_angles(
    pair: &TrajectoryPair,
    mode: TransformMode,
    frames: &FrameOptions,
) -> Result<Vec<Option<TaitBryanAngles>>> {
    let fk = discrete_frames(pair.k(), frames)?;
    let fl = discrete_frames(pair.l(), frames)?;
    fk.iter()
        .zip(&fl)
        .map(|(a, b)| match frame_transform(a, b, mode) {
            Ok(t) => Ok(Some(extract_tait_bryan(&t.rotation))),
            Err(QtcError::UndefinedFrame(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect()
}

/// Encodes a synchronized pair into a symbol sequence.
///
/// Planar variants cover `τ = 0 ..= n-2`; the 3D variant covers
/// `τ = 1 ..= n-2`, where both discrete frames exist.
pub fn encode(pair: &TrajectoryPair, cfg: &EncodeConfig) -> Result<QtcSequence> {
    cfg.thresholds.validate()?;
    let eps = cfg.frames.eps_disp;
    let th = &cfg.thresholds;
    let n = pair.len();

    if cfg.variant.is_planar() {
        for (i, p) in pair.k().positions().chain(pair.l().positions()).enumerate() {
            if p.z.abs() > eps {
                return Err(QtcError::NotPlanar { index: i % n, z: p.z });
            }
        }
    }

    let angles = match cfg.variant {
        Variant::ThreeD => Some(relative_angles(pair, cfg.mode, &cfg.frames)?),
        _ => None,
    };
    let first = if angles.is_some() { 1 } else { 0 };

    let tuples = (first..n - 1)
        .map(|tau| {
            let (k0, k1) = (pair.k().position(tau), pair.k().position(tau + 1));
            let (l0, l1) = (pair.l().position(tau), pair.l().position(tau + 1));
            let mut warnings = Warnings::empty();
            let symbols = cfg
                .variant
                .constraints()
                .iter()
                .map(|c| {
                    let r: Relation = match c {
                        Constraint::A => distance(k0, k1, l0, th.dist, eps),
                        Constraint::B => distance(l0, l1, k0, th.dist, eps),
                        Constraint::C => speed(k0, k1, l0, l1, th.speed),
                        Constraint::D => side(k0, k1, l0, th.side, eps),
                        Constraint::E => side(l0, l1, k0, th.side, eps),
                        Constraint::F => angle(k0, k1, l0, l1, th.angle_f, eps),
                        Constraint::G | Constraint::H | Constraint::I => {
                            let slot = *c as usize - Constraint::G as usize;
                            let tb = angles.as_ref().and_then(|a| a[tau - 1]);
                            match tb {
                                Some(a) => Relation {
                                    symbol: quantize_angles(a, th.tait_bryan)[slot],
                                    warnings: Warnings::empty(),
                                },
                                None => Relation {
                                    symbol: QtcSymbol::Zero,
                                    warnings: Warnings::UNDEFINED_FRAME,
                                },
                            }
                        }
                    };
                    warnings |= r.warnings;
                    r.symbol
                })
                .collect();
            QtcTuple { tau, variant: cfg.variant, symbols, warnings }
        })
        .collect();

    Ok(QtcSequence { variant: cfg.variant, thresholds: cfg.thresholds, tuples })
}
