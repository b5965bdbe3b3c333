//! 2×2 real matrices, the rotation subgroup K and the upper triangular
//! stabilizer H of SL₂(ℝ).
//!
//! Rotations follow the convention `rot(t) = [[cos t, sin t], [-sin t, cos t]]`.
//! Every element factors uniquely as `rot(θ) · [[a, b], [0, 1/a]]` with
//! `a > 0`; the angle θ labels the coset `rot(θ)·H` and is what the loop
//! operates on.

use std::f64::consts::TAU;
use std::ops::Mul;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mat2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Inverse of a unimodular matrix (the adjugate). Callers must ensure
    /// `det == 1`.
    pub fn inverse_unimodular(&self) -> Self {
        Self::new(self.m22, -self.m12, -self.m21, self.m11)
    }

    /// Divides by `sqrt(det)` to pull a drifted product back onto SL₂.
    /// Never applied implicitly.
    pub fn renormalized(&self) -> Self {
        let s = self.det().sqrt().recip();
        Self::new(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.m11 - other.m11,
            self.m12 - other.m12,
            self.m21 - other.m21,
            self.m22 - other.m22,
        ]
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        (self.m11 * x + self.m12 * y, self.m21 * x + self.m22 * y)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, y: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 * y.m11 + self.m12 * y.m21,
            self.m11 * y.m12 + self.m12 * y.m22,
            self.m21 * y.m11 + self.m22 * y.m21,
            self.m21 * y.m12 + self.m22 * y.m22,
        )
    }
}

/// Element `[[a, b], [0, 1/a]]` of the stabilizer H, `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperTriangular {
    pub a: f64,
    pub b: f64,
}

impl UpperTriangular {
    pub fn new(a: f64, b: f64) -> Option<Self> {
        (a > 0.0 && a.is_finite() && b.is_finite()).then_some(Self { a, b })
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.a, self.b, 0.0, self.a.recip())
    }
}

/// A point of G/H ≅ S¹, stored as an angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct CosetAngle(f64);

impl CosetAngle {
    pub fn new(t: f64) -> Self {
        Self(normalize_angle(t))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Reduces an angle into `[0, 2π)`.
pub fn normalize_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Reduces an angle into `(-π, π]`.
pub fn wrap_to_pi(t: f64) -> f64 {
    let r = normalize_angle(t);
    if r > std::f64::consts::PI {
        r - TAU
    } else {
        r
    }
}

/// Distance between two points of the circle.
pub fn circular_distance(x: f64, y: f64) -> f64 {
    wrap_to_pi(x - y).abs()
}

pub fn rot(t: f64) -> Mat2 {
    let (s, c) = t.sin_cos();
    Mat2::new(c, s, -s, c)
}

/// Angle θ of the ray spanned by `(x, y)`, in the sense that `rot(θ)`
/// maps `(1, 0)` onto that ray.
pub fn ray_angle(x: f64, y: f64) -> f64 {
    (-y).atan2(x)
}

/// Factors `m = rot(θ) · h` with `h ∈ H`.
pub fn kh_decompose(m: &Mat2, tol_det: f64) -> Result<(CosetAngle, UpperTriangular)> {
    let det = m.det();
    if !((det - 1.0).abs() < tol_det) {
        return Err(Error::NotUnimodular { det });
    }
    let a = m.m11.hypot(m.m21);
    let scale = m.m11.abs().max(m.m12.abs()).max(m.m21.abs()).max(m.m22.abs());
    if a <= f64::EPSILON * scale || a == 0.0 {
        return Err(Error::DegenerateColumn);
    }
    let theta = ray_angle(m.m11, m.m21);
    let b = (m.m11 * m.m12 + m.m21 * m.m22) / a;
    Ok((CosetAngle::new(theta), UpperTriangular { a, b }))
}

pub fn angle_of(m: &Mat2, tol_det: f64) -> Result<CosetAngle> {
    kh_decompose(m, tol_det).map(|(theta, _)| theta)
}
