//! Coordinate conventions, 3-D vectors, rotations and rigid poses.
//!
//! Body frame is Forward-Right-Down (FRD): +x forward, +y right, +z down,
//! so "up" is -z. A positive roll moment `Mx` is right-handed about +x and
//! drops the right wing, i.e. turns the vehicle right. All modules in this
//! crate state their signs in this one convention. Angles are radians
//! internally; degrees appear only at CLI/config boundaries.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FrameError {
    #[error("rotation axis must be a unit vector (|axis| = {norm}, tolerance 1e-9)")]
    NonUnitAxis { norm: f64 },
}

/// 3-D vector, SI units per context (m, m/s, N, N·m).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    /// Body x axis: forward, the roll axis.
    pub const fn x_axis() -> Self {
        Vec3::new(1.0, 0.0, 0.0)
    }

    /// Body y axis: right, the pitch axis.
    pub const fn y_axis() -> Self {
        Vec3::new(0.0, 1.0, 0.0)
    }

    /// Body z axis: down, the yaw axis.
    pub const fn z_axis() -> Self {
        Vec3::new(0.0, 0.0, 1.0)
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

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

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        Vec3::new(self.x / n, self.y / n, self.z / n)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
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

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

/// Proper rotation matrix (orthonormal, det = +1), row-major.
///
/// Rotations are kept as matrices rather than quaternions: the kinematic
/// chain is only three hinges deep and explicit rows keep the sign
/// conventions readable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotMatrix {
    pub m: [[f64; 3]; 3],
}

impl RotMatrix {
    pub const IDENTITY: RotMatrix = RotMatrix {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Rodrigues rotation about a unit axis. Errors when |axis| deviates
    /// from 1 by more than 1e-9.
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Result<RotMatrix, FrameError> {
        let n = axis.norm();
        if (n - 1.0).abs() > 1e-9 {
            return Err(FrameError::NonUnitAxis { norm: n });
        }
        Ok(Self::from_unit_axis_angle(axis, angle))
    }

    fn from_unit_axis_angle(u: Vec3, angle: f64) -> RotMatrix {
        let c = angle.cos();
        let s = angle.sin();
        let t = 1.0 - c;
        RotMatrix {
            m: [
                [t * u.x * u.x + c, t * u.x * u.y - s * u.z, t * u.x * u.z + s * u.y],
                [t * u.x * u.y + s * u.z, t * u.y * u.y + c, t * u.y * u.z - s * u.x],
                [t * u.x * u.z - s * u.y, t * u.y * u.z + s * u.x, t * u.z * u.z + c],
            ],
        }
    }

    /// Rotation about body x by `angle`: +y -> +z for positive angles.
    pub fn about_x(angle: f64) -> RotMatrix {
        let (s, c) = angle.sin_cos();
        RotMatrix {
            m: [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]],
        }
    }

    /// Rotation about body y by `angle`: +z -> +x for positive angles.
    pub fn about_y(angle: f64) -> RotMatrix {
        let (s, c) = angle.sin_cos();
        RotMatrix {
            m: [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]],
        }
    }

    /// Rotation about body z by `angle`: +x -> +y for positive angles.
    pub fn about_z(angle: f64) -> RotMatrix {
        let (s, c) = angle.sin_cos();
        RotMatrix {
            m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn transpose(&self) -> RotMatrix {
        let m = &self.m;
        RotMatrix {
            m: [
                [m[0][0], m[1][0], m[2][0]],
                [m[0][1], m[1][1], m[2][1]],
                [m[0][2], m[1][2], m[2][2]],
            ],
        }
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Max absolute deviation of RᵀR from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let rt = self.transpose();
        let p = rt.mat_mul(self);
        let mut err: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                err = err.max((p.m[i][j] - expect).abs());
            }
        }
        err
    }

    pub fn mat_mul(&self, other: &RotMatrix) -> RotMatrix {
        let a = &self.m;
        let b = &other.m;
        let mut r = [[0.0; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
            }
        }
        RotMatrix { m: r }
    }
}

/// Rigid pose: rotation plus translation, mapping local points into the
/// parent frame as `R p + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub rotation: RotMatrix,
    pub translation: Vec3,
}

impl Pose {
    pub const IDENTITY: Pose = Pose {
        rotation: RotMatrix::IDENTITY,
        translation: Vec3::ZERO,
    };

    pub fn new(rotation: RotMatrix, translation: Vec3) -> Self {
        Pose { rotation, translation }
    }

    pub fn from_rotation(rotation: RotMatrix) -> Self {
        Pose::new(rotation, Vec3::ZERO)
    }

    pub fn from_translation(translation: Vec3) -> Self {
        Pose::new(RotMatrix::IDENTITY, translation)
    }

    /// `compose(a, b)` applies `b` first, then `a`.
    pub fn compose(a: &Pose, b: &Pose) -> Pose {
        Pose {
            rotation: a.rotation.mat_mul(&b.rotation),
            translation: a.rotation.apply(b.translation) + a.translation,
        }
    }

    pub fn transform_point(&self, p: Vec3) -> Vec3 {
        self.rotation.apply(p) + self.translation
    }

    /// Rotates a direction, ignoring translation.
    pub fn transform_vector(&self, v: Vec3) -> Vec3 {
        self.rotation.apply(v)
    }

    pub fn inverse(&self) -> Pose {
        let rt = self.rotation.transpose();
        Pose {
            rotation: rt,
            translation: -rt.apply(self.translation),
        }
    }
}

/// Reflection across the body xz plane: `(x, y, z) -> (x, -y, z)`.
///
/// This is the left/right wing symmetry operation. Pose-level mirroring
/// conjugates the rotation (`M R M`), which stays a proper rotation, so no
/// determinant -1 matrix ever enters the kinematics.
pub fn mirror_xz(v: Vec3) -> Vec3 {
    Vec3::new(v.x, -v.y, v.z)
}

/// Mirror of a rigid pose across the xz plane.
pub fn mirror_pose(p: &Pose) -> Pose {
    let m = &p.rotation.m;
    // M R M with M = diag(1, -1, 1): flip the sign of row 1 and column 1.
    let rotation = RotMatrix {
        m: [
            [m[0][0], -m[0][1], m[0][2]],
            [-m[1][0], m[1][1], -m[1][2]],
            [m[2][0], -m[2][1], m[2][2]],
        ],
    };
    Pose {
        rotation,
        translation: mirror_xz(p.translation),
    }
}
