//! Minimal planar vector/pose types shared by the mechanics modules.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product (torque of `other` applied at `self`).
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_squared(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Unit vector at `angle` from the +x axis.
    pub fn from_angle(angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c, s)
    }

    /// Unsigned angle to `other`, in [0, pi].
    pub fn angle_between(self, other: Vec2) -> f64 {
        let cos = (self.dot(other) / (self.norm() * other.norm())).clamp(-1.0, 1.0);
        cos.acos()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Planar pose: position plus rotation about the out-of-plane axis.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Pose2 {
    pub position: Vec2,
    /// Radians, counter-clockwise.
    pub rotation: f64,
}

impl Pose2 {
    pub fn new(position: Vec2, rotation: f64) -> Self {
        Pose2 { position, rotation }
    }

    pub fn from_xy(x: f64, y: f64) -> Self {
        Pose2 { position: Vec2::new(x, y), rotation: 0.0 }
    }

    /// Map a point from the local frame into the world frame.
    pub fn transform_point(&self, local: Vec2) -> Vec2 {
        self.position + local.rotated(self.rotation)
    }

    /// Map a world point into the local frame.
    pub fn inverse_transform_point(&self, world: Vec2) -> Vec2 {
        (world - self.position).rotated(-self.rotation)
    }

    pub fn is_finite(&self) -> bool {
        self.position.is_finite() && self.rotation.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn transform_round_trip() {
        let pose = Pose2::new(Vec2::new(1.5, -2.0), 0.7);
        let p = Vec2::new(0.3, 0.4);
        let back = pose.inverse_transform_point(pose.transform_point(p));
        assert_relative_eq!(back.x, p.x, epsilon = 1e-14);
        assert_relative_eq!(back.y, p.y, epsilon = 1e-14);
    }

    #[test]
    fn perp_is_ccw() {
        let v = Vec2::new(1.0, 0.0);
        let p = v.perp();
        assert_relative_eq!(p.x, 0.0);
        assert_relative_eq!(p.y, 1.0);
        assert_relative_eq!(v.cross(p), 1.0);
    }

    #[test]
    fn angle_between_is_unsigned() {
        let a = Vec2::new(1.0, 0.0);
        let b = Vec2::from_angle(-0.5);
        assert_relative_eq!(a.angle_between(b), 0.5, epsilon = 1e-12);
    }
}
