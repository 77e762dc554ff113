//! Fingertip (two-gel) grasp feasibility.
//!
//! Larger objects are squeezed between two bare gels like a two-jaw
//! gripper. The minimal planar model: the grasp is feasible when the two
//! contacts achieve force closure within their friction cones (each
//! contact "sees" the other inside its cone) and the squeeze supplies
//! enough tangential capacity to carry the weight. Gel compliance is
//! abstracted upstream as a bonus on the effective friction coefficient.

use thiserror::Error;

use crate::catalog::{Environment, RigidObject2D};
use crate::geometry::Vec2;

/// Effective friction bonus from the conforming gel surface, applied when
/// building a grasp from raw gel-object friction.
pub const GEL_COMPLIANCE_FRICTION_BONUS: f64 = 0.2;

#[derive(Debug, Error, PartialEq)]
pub enum TipGraspError {
    #[error("object span {width:.3e} m exceeds the gripper aperture {aperture:.3e} m")]
    ApertureExceeded { width: f64, aperture: f64 },
    #[error("invalid grasp: {0}")]
    InvalidGrasp(&'static str),
}

/// A contact location with its inward-pointing unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactPoint {
    pub position: Vec2,
    pub normal: Vec2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoFingerGrasp {
    pub contact_left: ContactPoint,
    pub contact_right: ContactPoint,
    /// N
    pub squeeze_force: f64,
    /// Effective gel-object friction coefficient (compliance included).
    pub friction_mu: f64,
}

impl TwoFingerGrasp {
    /// Straight antipodal squeeze across the x axis with each normal
    /// misaligned by the given angles.
    pub fn antipodal(
        half_span: f64,
        misalign_left: f64,
        misalign_right: f64,
        squeeze_force: f64,
        friction_mu: f64,
    ) -> Self {
        TwoFingerGrasp {
            contact_left: ContactPoint {
                position: Vec2::new(-half_span, 0.0),
                normal: Vec2::new(1.0, 0.0).rotated(misalign_left),
            },
            contact_right: ContactPoint {
                position: Vec2::new(half_span, 0.0),
                normal: Vec2::new(-1.0, 0.0).rotated(misalign_right),
            },
            squeeze_force,
            friction_mu,
        }
    }

    fn validate(&self) -> Result<(), TipGraspError> {
        if !(self.squeeze_force > 0.0) {
            return Err(TipGraspError::InvalidGrasp("squeeze force must be positive"));
        }
        if !(self.friction_mu >= 0.0) {
            return Err(TipGraspError::InvalidGrasp("friction must be non-negative"));
        }
        let span = self.contact_right.position - self.contact_left.position;
        if span.norm() == 0.0 {
            return Err(TipGraspError::InvalidGrasp("contacts coincide"));
        }
        // Normals must point toward the object interior (toward each other).
        if self.contact_left.normal.dot(span) <= 0.0
            || self.contact_right.normal.dot(-span) <= 0.0
        {
            return Err(TipGraspError::InvalidGrasp("normals must point inward"));
        }
        Ok(())
    }
}

/// Planar two-contact force closure: each contact must see the other
/// within its friction cone of half-angle atan(mu).
pub fn force_closure(grasp: &TwoFingerGrasp) -> Result<bool, TipGraspError> {
    grasp.validate()?;
    let cone = grasp.friction_mu.atan();
    let axis = (grasp.contact_right.position - grasp.contact_left.position).normalized();
    let left_ok = grasp.contact_left.normal.angle_between(axis) <= cone;
    let right_ok = grasp.contact_right.normal.angle_between(-axis) <= cone;
    Ok(left_ok && right_ok)
}

/// Load support: combined tangential capacity of both contacts must exceed
/// the weight, `2 * mu * F > m * g`.
pub fn load_supported(grasp: &TwoFingerGrasp, obj: &RigidObject2D, env: &Environment) -> bool {
    2.0 * grasp.friction_mu * grasp.squeeze_force > obj.weight(env.gravity)
}

/// Full feasibility check: aperture, force closure, load support.
pub fn fingertip_feasible(
    grasp: &TwoFingerGrasp,
    obj: &RigidObject2D,
    env: &Environment,
    max_aperture: f64,
) -> Result<bool, TipGraspError> {
    grasp.validate()?;
    let width = (grasp.contact_right.position - grasp.contact_left.position).norm();
    if width > max_aperture {
        return Err(TipGraspError::ApertureExceeded { width, aperture: max_aperture });
    }
    Ok(force_closure(grasp)? && load_supported(grasp, obj, env))
}
