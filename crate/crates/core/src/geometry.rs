//! Small fixed-size vector and rotation algebra.
//!
//! Rotations use the intrinsic z-y-x (yaw, pitch, roll) convention:
//! `T = Rz(psi) * Ry(theta) * Rx(phi)`.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Degenerate;

/// Default lower bound on vector norms accepted by [`Vec3::normalize`].
pub const DEFAULT_EPS: f64 = 1e-9;

/// `|r31|` at or above this value is treated as gimbal lock.
pub const GIMBAL_LOCK_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Right-handed cross product.
    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector along `self`, or [`Degenerate`] when `|self| < eps`.
    pub fn normalize(self, eps: f64) -> Result<Vec3, Degenerate> {
        let norm = self.norm();
        if !(norm >= eps) {
            return Err(Degenerate { norm, eps });
        }
        Ok(self * (1.0 / norm))
    }

    /// Unsigned angle to `other` in `[0, pi]`, via the clamped normalized dot.
    pub fn angle_to(self, other: Vec3) -> f64 {
        let denom = self.norm() * other.norm();
        (self.dot(other) / denom).clamp(-1.0, 1.0).acos()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn max_abs_diff(self, other: Vec3) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, rhs: Vec3) {
        *self = *self + rhs;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index out of range: {i}"),
        }
    }
}

/// 3x3 rotation matrix, row-major: `m[i][j]` is `r_(i+1)(j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationMatrix {
    pub m: [[f64; 3]; 3],
}

impl RotationMatrix {
    pub const IDENTITY: RotationMatrix = RotationMatrix {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Builds a matrix from rows without checking orthonormality.
    pub const fn from_rows(m: [[f64; 3]; 3]) -> Self {
        Self { m }
    }

    /// Matrix whose columns are `c0`, `c1`, `c2`.
    pub fn from_columns(c0: Vec3, c1: Vec3, c2: Vec3) -> Self {
        Self {
            m: [[c0.x, c1.x, c2.x], [c0.y, c1.y, c2.y], [c0.z, c1.z, c2.z]],
        }
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    /// Rotation by `angle` radians about the x axis.
    pub fn rot_x(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::from_rows([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    }

    pub fn rot_y(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::from_rows([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    }

    pub fn rot_z(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::from_rows([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Rotation by `angle` about the unit `axis` (Rodrigues).
    pub fn about_axis(axis: Vec3, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let k = 1.0 - c;
        let Vec3 { x, y, z } = axis;
        Self::from_rows([
            [c + x * x * k, x * y * k - z * s, x * z * k + y * s],
            [y * x * k + z * s, c + y * y * k, y * z * k - x * s],
            [z * x * k - y * s, z * y * k + x * s, c + z * z * k],
        ])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.m;
        Self::from_rows([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    /// Total rotation angle `arccos((tr T - 1) / 2)` in `[0, pi]`.
    pub fn rotation_angle(&self) -> f64 {
        ((self.trace() - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    /// Largest entry of `|M Mᵀ - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let p = *self * self.transpose();
        let mut err: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                err = err.max((p.m[i][j] - expected).abs());
            }
        }
        err
    }

    /// Orthonormal with determinant +1, both within `tol`.
    pub fn is_rotation(&self, tol: f64) -> bool {
        self.orthonormality_error() < tol && (self.determinant() - 1.0).abs() <= tol
    }

    pub fn max_abs_diff(&self, other: &RotationMatrix) -> f64 {
        let mut err: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                err = err.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        err
    }
}

impl Mul for RotationMatrix {
    type Output = RotationMatrix;
    fn mul(self, rhs: RotationMatrix) -> RotationMatrix {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.m[i][k] * rhs.m[k][j]).sum();
            }
        }
        RotationMatrix { m: out }
    }
}

/// Yaw `psi` (about z), pitch `theta` (about y), roll `phi` (about x), radians.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TaitBryanAngles {
    pub psi: f64,
    pub theta: f64,
    pub phi: f64,
}

impl TaitBryanAngles {
    pub const fn new(psi: f64, theta: f64, phi: f64) -> Self {
        Self { psi, theta, phi }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.psi, self.theta, self.phi]
    }

    pub fn max_abs_diff(self, other: TaitBryanAngles) -> f64 {
        (self.psi - other.psi)
            .abs()
            .max((self.theta - other.theta).abs())
            .max((self.phi - other.phi).abs())
    }
}

/// Decomposes `T = Rz(psi) Ry(theta) Rx(phi)` into its angles.
///
/// Away from gimbal lock:
/// `psi = atan2(r21, r11)`, `theta = atan2(-r31, sqrt(r32² + r33²))`,
/// `phi = atan2(r32, r33)`.
///
/// At gimbal lock (`|r31| >= 1 - 1e-9`) only `psi ± phi` is observable;
/// `phi` is pinned to zero and the whole in-plane rotation goes to `psi`.
pub fn extract_tait_bryan(t: &RotationMatrix) -> TaitBryanAngles {
    let m = &t.m;
    let r31 = m[2][0].clamp(-1.0, 1.0);
    if r31.abs() >= 1.0 - GIMBAL_LOCK_EPS {
        let theta = if r31 < 0.0 {
            std::f64::consts::FRAC_PI_2
        } else {
            -std::f64::consts::FRAC_PI_2
        };
        // With phi = 0 both lock signs give r12 = -sin(psi), r22 = cos(psi).
        let psi = atan2_or_zero(-m[0][1], m[1][1]);
        return TaitBryanAngles::new(psi, theta, 0.0);
    }
    let psi = atan2_or_zero(m[1][0], m[0][0]);
    let theta = atan2_or_zero(-r31, (m[2][1] * m[2][1] + m[2][2] * m[2][2]).sqrt());
    let phi = atan2_or_zero(m[2][1], m[2][2]);
    TaitBryanAngles::new(psi, theta, phi)
}

/// `Rz(psi) * Ry(theta) * Rx(phi)`.
pub fn compose_tait_bryan(a: TaitBryanAngles) -> RotationMatrix {
    RotationMatrix::rot_z(a.psi) * RotationMatrix::rot_y(a.theta) * RotationMatrix::rot_x(a.phi)
}

fn atan2_or_zero(y: f64, x: f64) -> f64 {
    if y == 0.0 && x == 0.0 {
        0.0
    } else {
        y.atan2(x)
    }
}
