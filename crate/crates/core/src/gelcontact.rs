//! Parametric surrogate for the hyperelastic gel contact.
//!
//! The physical gel deforms nonlinearly; the contact angle between the gel
//! reaction and the press axis depends on the poses, the geometry, and the
//! Yeoh material coefficients. A full FEM solution is out of scope, so this
//! module models the gel as a circle of the cast curvature radius: the
//! geometric contact angle at the closest-approach point is corrected by a
//! stiffness-dependent bulging term, and the normal force follows a
//! Hertz-like power law closed with the leading Yeoh coefficient. The
//! surrogate sits behind plain functions so an FEM-backed implementation
//! could replace it without touching callers.

use thiserror::Error;

use crate::catalog::{FrictionSet, GelSpec, RigidObject2D};
use crate::geometry::{Pose2, Vec2};

#[derive(Debug, Error, PartialEq)]
pub enum GelContactError {
    #[error("object does not touch the gel (gap of {gap:.3e} m)")]
    NoContact { gap: f64 },
    #[error("gel center lies inside the object; the surrogate does not cover full envelopment")]
    CenterInsideObject,
    #[error("negative indentation depth {0}")]
    NegativeDepth(f64),
    #[error("pose is not finite")]
    NonFinitePose,
}

/// Object and gel placement for one contact query.
///
/// The object pose locates the rectangle center; the gel pose locates the
/// circle center, and its rotation is the press axis (the direction the
/// finger advances).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseInput {
    pub object_pose: Pose2,
    pub gel_pose: Pose2,
}

/// Resolved quasi-static gel contact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GelContactState {
    /// m
    pub indentation_depth: f64,
    /// rad, angle between the gel reaction and the press axis, in [0, pi/2).
    pub contact_angle_theta: f64,
    /// World-frame contact point after migration, m.
    pub contact_point_a: Vec2,
    /// N
    pub normal_force: f64,
    /// N, mu_gel_object * normal_force.
    pub tangential_capacity: f64,
}

/// Bulge correction: theta grows by `BULGE_GAIN * (C10/C10_REF) * depth/R`.
const BULGE_GAIN: f64 = 0.3;
const C10_REF: f64 = 0.11e6;

/// Contact-point migration: linear in indentation, capped at 30% of the
/// contact patch half-width.
const MIGRATION_GAIN: f64 = 3.0;
const MIGRATION_CAP: f64 = 0.3;

/// Emitted angles stay strictly below pi/2 so tan(theta) remains bounded.
const THETA_MAX: f64 = std::f64::consts::FRAC_PI_2 - 1e-3;

/// m, rounding slack at exact tangency: separations this close to the gel
/// radius count as touching with zero depth.
const CONTACT_EPSILON: f64 = 1e-12;

/// Hertz-like contact stiffness `k1` for `F = k1 * depth^1.5`.
///
/// The initial shear modulus of a Yeoh solid is `2*C10`; for an
/// incompressible solid this gives `E* = 8*C10`, and the spherical-indenter
/// law `F = (4/3)*E**sqrt(R)*depth^1.5` yields `k1 = (32/3)*C10*sqrt(R)`.
pub fn contact_stiffness(gel: &GelSpec) -> f64 {
    32.0 / 3.0 * gel.yeoh_coefficients[0] * gel.curvature_radius.sqrt()
}

/// Normal force for a given indentation depth, strictly increasing.
pub fn normal_force_from_indentation(depth: f64, gel: &GelSpec) -> Result<f64, GelContactError> {
    if depth < 0.0 {
        return Err(GelContactError::NegativeDepth(depth));
    }
    Ok(contact_stiffness(gel) * depth.powf(1.5))
}

/// Indentation depth that produces the given normal force (inverse of
/// [`normal_force_from_indentation`]).
pub fn indentation_for_force(force: f64, gel: &GelSpec) -> f64 {
    (force.max(0.0) / contact_stiffness(gel)).powf(2.0 / 3.0)
}

/// Resolve the gel contact for a pose: indentation, contact angle, migrated
/// contact point, and force capacity.
pub fn contact_angle(
    pose: &PoseInput,
    gel: &GelSpec,
    obj: &RigidObject2D,
    friction: &FrictionSet,
) -> Result<GelContactState, GelContactError> {
    if !pose.object_pose.is_finite() || !pose.gel_pose.is_finite() {
        return Err(GelContactError::NonFinitePose);
    }
    let radius = gel.curvature_radius;
    let center = pose.gel_pose.position;

    // Closest point of the rectangle to the circle center, in local frame.
    let local_center = pose.object_pose.inverse_transform_point(center);
    let hx = obj.length / 2.0;
    let hy = obj.height / 2.0;
    if local_center.x.abs() < hx && local_center.y.abs() < hy {
        return Err(GelContactError::CenterInsideObject);
    }
    let clamped = Vec2::new(local_center.x.clamp(-hx, hx), local_center.y.clamp(-hy, hy));
    let closest = pose.object_pose.transform_point(clamped);

    let separation = (center - closest).norm();
    let depth = radius - separation;
    if depth < -CONTACT_EPSILON {
        return Err(GelContactError::NoContact { gap: -depth });
    }
    let depth = depth.max(0.0);

    // Direction the gel pushes the object, and the geometric contact angle
    // relative to the press axis.
    let push_dir = if separation > 0.0 {
        (closest - center) * (1.0 / separation)
    } else {
        Vec2::from_angle(pose.gel_pose.rotation)
    };
    let press_axis = Vec2::from_angle(pose.gel_pose.rotation);
    let theta_geom = push_dir.angle_between(press_axis);

    let bulge = BULGE_GAIN * (gel.yeoh_coefficients[0] / C10_REF) * (depth / radius);
    let theta = (theta_geom + bulge).min(THETA_MAX);

    // Contact patch half-width of the circle chord at this depth.
    let half_width = (2.0 * radius * depth - depth * depth).max(0.0).sqrt();

    // Point A migrates along the surface toward the growing contact side.
    let tangent = push_dir.perp();
    let toward_object = pose.object_pose.position - closest;
    let side = tangent.dot(toward_object);
    let direction = if side > 0.0 {
        1.0
    } else if side < 0.0 {
        -1.0
    } else {
        0.0
    };
    let fraction = (MIGRATION_GAIN * depth / radius).min(MIGRATION_CAP);
    let contact_point_a = closest + tangent * (direction * fraction * half_width);

    let normal_force = normal_force_from_indentation(depth, gel)?;
    Ok(GelContactState {
        indentation_depth: depth,
        contact_angle_theta: theta,
        contact_point_a,
        normal_force,
        tangential_capacity: friction.mu_gel_object * normal_force,
    })
}
