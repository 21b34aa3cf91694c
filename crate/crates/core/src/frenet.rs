//! Discrete and continuous Frenet-Serret frames, and the rotation that
//! carries one object's frame onto the other's.
//!
//! Discrete frames follow the forward-difference construction:
//!
//! ```text
//! t(τ) = (x(τ+1) - x(τ)) / |x(τ+1) - x(τ)|
//! b(τ) = (t(τ-1) × t(τ)) / |t(τ-1) × t(τ)|
//! n(τ) = b(τ) × t(τ)
//! ```
//!
//! so an `n`-sample trajectory yields frames at `τ = 1 ..= n-2`.

use serde::{Deserialize, Serialize};

use crate::error::{Degenerate, QtcError, Result};
use crate::geometry::{RotationMatrix, Vec3, DEFAULT_EPS};
use crate::trajectory::Trajectory;

/// Why a frame could not be built from its own samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degeneracy {
    None,
    ZeroDisplacement,
    ParallelTangents,
}

impl Degeneracy {
    pub fn as_str(self) -> &'static str {
        match self {
            Degeneracy::None => "none",
            Degeneracy::ZeroDisplacement => "zero-displacement",
            Degeneracy::ParallelTangents => "parallel-tangents",
        }
    }
}

/// How degenerate samples are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegeneracyPolicy {
    /// Reuse the previous tangent / binormal; with no history, complete the
    /// tangent to a basis along the canonical axis least aligned with it.
    #[default]
    CarryForward,
    /// Leave the frame undefined so downstream symbols are flagged.
    MarkUndefined,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameOptions {
    pub policy: DegeneracyPolicy,
    /// Displacements shorter than this have no tangent.
    pub eps_disp: f64,
    /// Consecutive tangents closer than this angle (radians) are parallel.
    pub eps_parallel: f64,
}

impl Default for FrameOptions {
    fn default() -> Self {
        Self {
            policy: DegeneracyPolicy::CarryForward,
            eps_disp: DEFAULT_EPS,
            eps_parallel: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrenetFrame {
    pub index: usize,
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
    pub degeneracy: Degeneracy,
    /// False only under [`DegeneracyPolicy::MarkUndefined`] for degenerate samples.
    pub defined: bool,
}

impl FrenetFrame {
    /// Columns `(t, n, b)`.
    pub fn matrix(&self) -> RotationMatrix {
        RotationMatrix::from_columns(self.t, self.n, self.b)
    }

    /// Frame with every basis vector rotated by `r`.
    pub fn rotated(&self, r: &RotationMatrix) -> Self {
        Self { t: r.apply(self.t), n: r.apply(self.n), b: r.apply(self.b), ..*self }
    }
}

/// Deterministic right-handed basis `(t, n, b)` completing `t`.
fn complete_basis(t: Vec3) -> (Vec3, Vec3) {
    let abs = [t.x.abs(), t.y.abs(), t.z.abs()];
    let axis = if abs[0] <= abs[1] && abs[0] <= abs[2] {
        Vec3::X
    } else if abs[1] <= abs[2] {
        Vec3::Y
    } else {
        Vec3::Z
    };
    // axis is at most ~55° from perpendicular to t, so this never degenerates
    let b = t.cross(axis).normalize(1e-12).expect("least-aligned axis");
    (b.cross(t), b)
}

/// Per-sample unit tangents, `None` where the displacement vanishes.
fn raw_tangents(traj: &Trajectory, eps: f64) -> Vec<Option<Vec3>> {
    (0..traj.len() - 1).map(|i| traj.displacement(i).normalize(eps).ok()).collect()
}

/// Discrete frames at `τ = 1 ..= n-2`.
pub fn discrete_frames(traj: &Trajectory, opts: &FrameOptions) -> Result<Vec<FrenetFrame>> {
    if traj.len() < 3 {
        return Err(QtcError::TooShort { object_id: traj.object_id().into(), len: traj.len() });
    }
    let raw = raw_tangents(traj, opts.eps_disp);
    let Some(first_valid) = raw.iter().flatten().next().copied() else {
        return Err(QtcError::AllDegenerate { object_id: traj.object_id().into() });
    };

    // Fill gaps: carry the last tangent forward, back-fill a stationary prefix.
    let mut last = first_valid;
    let tangents: Vec<Vec3> = raw
        .iter()
        .map(|t| {
            if let Some(t) = t {
                last = *t;
            }
            last
        })
        .collect();

    let sin_parallel = opts.eps_parallel.sin();
    let mut prev_b: Option<Vec3> = None;
    let mut frames = Vec::with_capacity(traj.len() - 2);
    for tau in 1..traj.len() - 1 {
        let t = tangents[tau];
        let cross = tangents[tau - 1].cross(t);
        let degeneracy = if raw[tau].is_none() || raw[tau - 1].is_none() {
            Degeneracy::ZeroDisplacement
        } else if cross.norm() < sin_parallel {
            Degeneracy::ParallelTangents
        } else {
            Degeneracy::None
        };

        let defined = degeneracy == Degeneracy::None || opts.policy == DegeneracyPolicy::CarryForward;
        let b = if cross.norm() >= sin_parallel && raw[tau].is_some() {
            // regular, or a genuine turn across a pause
            cross.normalize(0.0).expect("cross above threshold")
        } else {
            prev_b
                .and_then(|pb| (pb - t * pb.dot(t)).normalize(1e-6).ok())
                .unwrap_or_else(|| complete_basis(t).1)
        };
        if defined {
            prev_b = Some(b);
        }
        frames.push(FrenetFrame { index: tau, t, n: b.cross(t), b, degeneracy, defined });
    }
    Ok(frames)
}

/// Frame from an analytic velocity and acceleration. The normal is the
/// component of acceleration orthogonal to the tangent.
pub fn continuous_frame(
    index: usize,
    velocity: Vec3,
    acceleration: Vec3,
    eps: f64,
) -> Result<FrenetFrame, Degenerate> {
    let t = velocity.normalize(eps)?;
    let n = (acceleration - t * acceleration.dot(t)).normalize(eps)?;
    Ok(FrenetFrame {
        index,
        t,
        n,
        b: t.cross(n),
        degeneracy: Degeneracy::None,
        defined: true,
    })
}

/// [`continuous_frame`] at every sample.
pub fn continuous_frames(
    velocities: &[Vec3],
    accelerations: &[Vec3],
    eps: f64,
) -> Vec<Result<FrenetFrame, Degenerate>> {
    velocities
        .iter()
        .zip(accelerations)
        .enumerate()
        .map(|(i, (&v, &a))| continuous_frame(i, v, a, eps))
        .collect()
}

/// Coordinates in which the frame-to-frame rotation is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformMode {
    /// `T = F2 F1⁻¹`, so that `F2 = T F1`.
    #[default]
    WorldFrame,
    /// `T = F1⁻¹ F2`; invariant under a common global rotation.
    BodyFrame,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FramePairTransform {
    pub rotation: RotationMatrix,
    pub mode: TransformMode,
    pub index: usize,
}

/// Rotation taking `f1` onto `f2`. Frames are orthonormal, so the inverse
/// is the transpose.
pub fn frame_transform(
    f1: &FrenetFrame,
    f2: &FrenetFrame,
    mode: TransformMode,
) -> Result<FramePairTransform> {
    if f1.index != f2.index {
        return Err(QtcError::FrameIndexMismatch(f1.index, f2.index));
    }
    if !f1.defined || !f2.defined {
        return Err(QtcError::UndefinedFrame(f1.index));
    }
    let (m1, m2) = (f1.matrix(), f2.matrix());
    let rotation = match mode {
        TransformMode::WorldFrame => m2 * m1.transpose(),
        TransformMode::BodyFrame => m1.transpose() * m2,
    };
    Ok(FramePairTransform { rotation, mode, index: f1.index })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(ps: &[[f64; 3]]) -> Trajectory {
        let ps: Vec<Vec3> = ps.iter().map(|&p| p.into()).collect();
        Trajectory::from_positions("o", &ps, 0.0, 1.0).unwrap()
    }

    fn assert_orthonormal(f: &FrenetFrame) {
        for v in [f.t, f.n, f.b] {
            assert!((v.norm() - 1.0).abs() < 1e-9);
        }
        assert!(f.t.dot(f.n).abs() < 1e-9);
        assert!(f.t.dot(f.b).abs() < 1e-9);
        assert!(f.n.dot(f.b).abs() < 1e-9);
        assert!(f.t.cross(f.n).max_abs_diff(f.b) < 1e-9);
    }

    #[test]
    fn right_angle_frame() {
        let fs = discrete_frames(&traj(&[[0., 0., 0.], [1., 0., 0.], [1., 1., 0.]]), &FrameOptions::default())
            .unwrap();
        assert_eq!(fs.len(), 1);
        let f = fs[0];
        assert_eq!(f.index, 1);
        assert_eq!(f.t, Vec3::Y);
        assert_eq!(f.b, Vec3::Z);
        assert_eq!(f.n, Vec3::new(-1.0, 0.0, 0.0));
        assert_eq!(f.degeneracy, Degeneracy::None);
    }

    #[test]
    fn collinear_points_are_completed() {
        let fs = discrete_frames(&traj(&[[0., 0., 0.], [1., 0., 0.], [2., 0., 0.]]), &FrameOptions::default())
            .unwrap();
        let f = fs[0];
        assert_eq!(f.degeneracy, Degeneracy::ParallelTangents);
        assert!(f.defined);
        assert_eq!(f.t, Vec3::X);
        assert_orthonormal(&f);

        let opts = FrameOptions { policy: DegeneracyPolicy::MarkUndefined, ..FrameOptions::default() };
        let f = discrete_frames(&traj(&[[0., 0., 0.], [1., 0., 0.], [2., 0., 0.]]), &opts).unwrap()[0];
        assert!(!f.defined);
    }

    #[test]
    fn straight_segment_carries_binormal() {
        let fs = discrete_frames(
            &traj(&[[0., 0., 0.], [1., 0., 0.], [1., 1., 0.], [1., 2., 0.], [1., 3., 0.]]),
            &FrameOptions::default(),
        )
        .unwrap();
        assert_eq!(fs[0].degeneracy, Degeneracy::None);
        for f in &fs[1..] {
            assert_eq!(f.degeneracy, Degeneracy::ParallelTangents);
            assert_eq!(f.b, fs[0].b);
            assert_eq!(f.n, fs[0].n);
        }
    }

    #[test]
    fn stationary_object_is_all_degenerate() {
        let err = discrete_frames(&traj(&[[1., 1., 1.]; 5]), &FrameOptions::default()).unwrap_err();
        assert!(matches!(err, QtcError::AllDegenerate { .. }));
    }

    #[test]
    fn pause_reuses_tangent() {
        let fs = discrete_frames(
            &traj(&[[0., 0., 0.], [1., 0., 0.], [1., 1., 0.], [1., 1., 0.], [1., 2., 0.], [0., 2., 0.]]),
            &FrameOptions::default(),
        )
        .unwrap();
        assert_eq!(fs[1].degeneracy, Degeneracy::ZeroDisplacement);
        assert_eq!(fs[1].t, Vec3::Y);
        assert_eq!(fs[2].degeneracy, Degeneracy::ZeroDisplacement);
        for f in &fs {
            assert!(f.defined);
            assert_orthonormal(f);
        }
    }

    #[test]
    fn continuous_examples() {
        let f = continuous_frame(0, Vec3::Y, Vec3::new(-1.0, 0.0, 0.0), 1e-9).unwrap();
        assert_eq!((f.t, f.n, f.b), (Vec3::Y, Vec3::new(-1.0, 0.0, 0.0), Vec3::Z));

        assert!(continuous_frame(0, Vec3::X, Vec3::ZERO, 1e-9).is_err());

        let f = continuous_frame(0, Vec3::new(0.0, 1.0, 1.0), Vec3::new(-1.0, 0.0, 0.0), 1e-9).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(f.t.max_abs_diff(Vec3::new(0.0, r, r)) < 1e-15);
        assert!(f.n.max_abs_diff(Vec3::new(-1.0, 0.0, 0.0)) < 1e-15);
        assert!(f.b.max_abs_diff(Vec3::new(0.0, -r, r)) < 1e-15);
    }

    #[test]
    fn transform_examples() {
        let f1 = continuous_frame(3, Vec3::new(0.3, 1.0, 0.2), Vec3::new(-1.0, 0.1, 0.4), 1e-9).unwrap();
        let t = frame_transform(&f1, &f1, TransformMode::WorldFrame).unwrap();
        assert!(t.rotation.max_abs_diff(&RotationMatrix::IDENTITY) < 1e-15);

        let rz = RotationMatrix::rot_z(0.6);
        let f2 = f1.rotated(&rz);
        let t = frame_transform(&f1, &f2, TransformMode::WorldFrame).unwrap();
        assert!(t.rotation.max_abs_diff(&rz) < 1e-12);

        let mut other = f1;
        other.index = 4;
        assert!(frame_transform(&f1, &other, TransformMode::BodyFrame).is_err());
    }
}
