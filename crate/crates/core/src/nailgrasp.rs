//! Fingernail-grasp analysis.
//!
//! Sharp-edged objects cannot be scooped directly: the nail tip pushes at
//! the object's right side while the opposing gel holds the left, and the
//! object first *rolls* about the gel contact before the tip slips
//! underneath. The planar free body has three contacts: gel at A, ground
//! at B, nail tip at C. With the gel reaction decomposed as
//! `F_sy = F_sx * tan(theta)`, horizontal equilibrium
//!
//! ```text
//! F_sx + R_x - F_fx = 0
//! ```
//!
//! and the torque about A
//!
//! ```text
//! tau = -(l/2)*m*g + h*R_x - (h - d)*F_fx + l*F_fy
//! ```
//!
//! reduces, after substituting the equilibrium, to
//!
//! ```text
//! tau ~ l*F_fy + d*F_fx - h*F_sx - (l/2)*m*g
//! ```
//!
//! Rounded-edge objects skip the rolling stage: when the object's lower
//! edge radius exceeds the nail tip radius the tip wedges underneath and
//! the dominant-term torque balance asks only that the lifting force beat
//! half the weight.

use thiserror::Error;

use crate::catalog::{Environment, FingernailSpec, FrictionSet, GelSpec, RigidObject2D};
use crate::gelcontact::{self, GelContactError, GelContactState, PoseInput};
use crate::geometry::{Pose2, Vec2};

/// N, allowed residual of the horizontal equilibrium.
pub const EQUILIBRIUM_TOLERANCE: f64 = 1e-9;

/// m, quasi-static nail travel per sweep step.
pub const NAIL_TRAVEL_STEP: f64 = 0.1e-3;

#[derive(Debug, Error, PartialEq)]
pub enum NailGraspError {
    #[error("horizontal equilibrium violated by {residual:.3e} N")]
    EquilibriumViolated { residual: f64 },
    #[error("operation requires a {expected}-edged object, '{name}' is not")]
    WrongEdgeKind { expected: &'static str, name: String },
    #[error("nail contact height {height:.3e} m lies above the object top face {top:.3e} m")]
    ContactAboveTopFace { height: f64, top: f64 },
    #[error("nail contact height {0:.3e} m is negative")]
    NegativeContactHeight(f64),
    #[error(transparent)]
    Contact(#[from] GelContactError),
}

/// Force set of the rolling free body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactForces {
    /// N, gel reaction at A, horizontal component.
    pub f_sx: f64,
    /// N, gel reaction at A, vertical component (downward positive).
    pub f_sy: f64,
    /// N, tangential ground reaction at B.
    pub r_x: f64,
    /// N, nail force at C, horizontal component.
    pub f_fx: f64,
    /// N, nail force at C, vertical (lifting) component.
    pub f_fy: f64,
    /// m, height of the nail contact C on the object.
    pub contact_height_d: f64,
    /// rad, gel contact angle in effect (ties f_sy to f_sx).
    pub theta: f64,
}

impl ContactForces {
    /// Build a force set from the gel reaction magnitude along `theta`,
    /// with the ground reaction closing horizontal equilibrium exactly.
    pub fn from_gel_and_nail(
        gel_normal_component: f64,
        theta: f64,
        f_fx: f64,
        f_fy: f64,
        contact_height_d: f64,
    ) -> Self {
        let f_sx = gel_normal_component * theta.cos();
        ContactForces {
            f_sx,
            f_sy: f_sx * theta.tan(),
            r_x: f_fx - f_sx,
            f_fx,
            f_fy,
            contact_height_d,
            theta,
        }
    }

    /// Residual of the horizontal equilibrium.
    pub fn equilibrium_residual(&self) -> f64 {
        self.f_sx + self.r_x - self.f_fx
    }

    fn check(&self, obj: &RigidObject2D) -> Result<(), NailGraspError> {
        let residual = self.equilibrium_residual();
        if residual.abs() > EQUILIBRIUM_TOLERANCE {
            return Err(NailGraspError::EquilibriumViolated { residual });
        }
        if self.contact_height_d < 0.0 {
            return Err(NailGraspError::NegativeContactHeight(self.contact_height_d));
        }
        if self.contact_height_d > obj.height {
            return Err(NailGraspError::ContactAboveTopFace {
                height: self.contact_height_d,
                top: obj.height,
            });
        }
        Ok(())
    }
}

/// Full torque balance about the gel pivot A:
/// `tau = -(l/2)*m*g + h*R_x - (h - d)*F_fx + l*F_fy`.
pub fn rolling_torque(
    forces: &ContactForces,
    obj: &RigidObject2D,
    env: &Environment,
) -> Result<f64, NailGraspError> {
    forces.check(obj)?;
    let l = obj.length;
    let h = obj.height;
    let d = forces.contact_height_d;
    Ok(-(l / 2.0) * obj.mass * env.gravity + h * forces.r_x - (h - d) * forces.f_fx
        + l * forces.f_fy)
}

/// Reduced torque balance with equilibrium substituted:
/// `tau ~ l*F_fy + d*F_fx - h*F_sx - (l/2)*m*g`.
pub fn rolling_torque_reduced(
    forces: &ContactForces,
    obj: &RigidObject2D,
    env: &Environment,
) -> Result<f64, NailGraspError> {
    forces.check(obj)?;
    let l = obj.length;
    Ok(l * forces.f_fy + forces.contact_height_d * forces.f_fx - obj.height * forces.f_sx
        - (l / 2.0) * obj.mass * env.gravity)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraspPhase {
    /// Pivoting about the gel contact.
    Rotate,
    /// Nail tip established sliding contact underneath the object.
    Slide,
    /// Torque balance refuses to move the object.
    Stuck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseTransition {
    RotateToSlide,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraspPhasePrediction {
    pub phase: GraspPhase,
    /// N*m, reduced torque about A.
    pub net_torque: f64,
    pub transition: Option<PhaseTransition>,
    /// Set when the prediction is degenerate (e.g. friction regime invalid).
    pub diagnostic: Option<&'static str>,
}

/// Object rotation at which the nail tip clears the lower corner and the
/// motion turns into sliding: half the tip wedge angle.
pub fn rotate_to_slide_angle(nail: &FingernailSpec) -> f64 {
    nail.tip_angle_deg.to_radians() / 2.0
}

/// Corner-contact pose whose gel indentation produces `normal_force`,
/// approaching the object's upper-left corner at `approach_angle` above
/// the horizontal. The object is assumed resting on the ground (y = 0).
pub fn rolling_pose_for_force(
    obj: &RigidObject2D,
    gel: &GelSpec,
    approach_angle: f64,
    normal_force: f64,
) -> PoseInput {
    let depth = gelcontact::indentation_for_force(normal_force, gel);
    let corner = Vec2::new(-obj.length / 2.0, obj.height);
    let offset = Vec2::new(-approach_angle.cos(), approach_angle.sin());
    let center = corner + offset * (gel.curvature_radius - depth);
    PoseInput {
        object_pose: Pose2::from_xy(0.0, obj.height / 2.0),
        // The stationary finger presses horizontally toward the nail.
        gel_pose: Pose2::new(center, 0.0),
    }
}

/// Static phase prediction for one pose, with the nail contact at its
/// default height (the tip radius, capped by the object height).
pub fn predict_rolling_phase(
    pose: &PoseInput,
    nail_force: Vec2,
    obj: &RigidObject2D,
    gel: &GelSpec,
    nail: &FingernailSpec,
    friction: &FrictionSet,
    env: &Environment,
) -> Result<GraspPhasePrediction, NailGraspError> {
    let contact_height = nail.tip_radius.min(obj.height);
    predict_rolling_phase_at(pose, nail_force, contact_height, obj, gel, nail, friction, env)
}

/// As [`predict_rolling_phase`] with an explicit nail contact height.
#[allow(clippy::too_many_arguments)]
pub fn predict_rolling_phase_at(
    pose: &PoseInput,
    nail_force: Vec2,
    contact_height: f64,
    obj: &RigidObject2D,
    gel: &GelSpec,
    nail: &FingernailSpec,
    friction: &FrictionSet,
    env: &Environment,
) -> Result<GraspPhasePrediction, NailGraspError> {
    if obj.edge.is_round() {
        return Err(NailGraspError::WrongEdgeKind { expected: "sharp", name: obj.name.clone() });
    }
    if contact_height > obj.height {
        return Err(NailGraspError::ContactAboveTopFace {
            height: contact_height,
            top: obj.height,
        });
    }
    if !friction.gel_dominates() {
        // The pivot-at-gel premise fails; refuse to predict motion.
        return Ok(GraspPhasePrediction {
            phase: GraspPhase::Stuck,
            net_torque: 0.0,
            transition: None,
            diagnostic: Some("gel friction does not dominate; pivot analysis invalid"),
        });
    }

    let contact: GelContactState = gelcontact::contact_angle(pose, gel, obj, friction)?;
    let forces = ContactForces::from_gel_and_nail(
        contact.normal_force,
        contact.contact_angle_theta,
        nail_force.x,
        nail_force.y,
        contact_height,
    );
    let torque = rolling_torque_reduced(&forces, obj, env)?;

    let mut diagnostic = None;
    let phase = if torque > 0.0 {
        // Once rotation can start, check whether the ground contact even
        // holds: the vertical ground reaction and its friction budget.
        let r_y = obj.weight(env.gravity) + forces.f_sy - forces.f_fy;
        if r_y < 0.0 {
            diagnostic = Some("nail force unloads the ground contact");
            GraspPhase::Slide
        } else if forces.r_x.abs() > friction.mu_surface_object * r_y {
            diagnostic = Some("ground contact slips; sliding onset");
            GraspPhase::Slide
        } else {
            GraspPhase::Rotate
        }
    } else {
        GraspPhase::Stuck
    };

    let mut prediction =
        GraspPhasePrediction { phase, net_torque: torque, transition: None, diagnostic };
    if prediction.phase == GraspPhase::Rotate
        && pose.object_pose.rotation >= rotate_to_slide_angle(nail)
    {
        prediction.phase = GraspPhase::Slide;
        prediction.transition = Some(PhaseTransition::RotateToSlide);
    }
    Ok(prediction)
}

/// Result of the quasi-static rolling sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct RollingSweep {
    pub final_phase: GraspPhase,
    /// rad, accumulated object rotation about the gel pivot.
    pub rotation: f64,
    pub steps: usize,
    pub last_torque: f64,
    pub transitioned: bool,
}

/// Integrate the grasp as a sequence of static equilibria: advance the nail
/// by fixed travel increments, rotating the object about the gel contact
/// while the torque stays positive, until it either gets stuck or the tip
/// slips underneath.
pub fn simulate_rolling_grasp(
    start: &PoseInput,
    nail_force: Vec2,
    obj: &RigidObject2D,
    gel: &GelSpec,
    nail: &FingernailSpec,
    friction: &FrictionSet,
    env: &Environment,
) -> Result<RollingSweep, NailGraspError> {
    let slide_angle = rotate_to_slide_angle(nail);
    let step_angle = NAIL_TRAVEL_STEP / obj.length;
    let max_steps = (slide_angle / step_angle).ceil() as usize + 8;

    let mut pose = *start;
    let mut rotation = 0.0;
    let mut last_torque = 0.0;
    for step in 0..max_steps {
        let prediction =
            predict_rolling_phase(&pose, nail_force, obj, gel, nail, friction, env)?;
        last_torque = prediction.net_torque;
        match prediction.phase {
            GraspPhase::Stuck => {
                return Ok(RollingSweep {
                    final_phase: GraspPhase::Stuck,
                    rotation,
                    steps: step,
                    last_torque,
                    transitioned: false,
                })
            }
            GraspPhase::Slide => {
                return Ok(RollingSweep {
                    final_phase: GraspPhase::Slide,
                    rotation,
                    steps: step,
                    last_torque,
                    transitioned: prediction.transition.is_some(),
                })
            }
            GraspPhase::Rotate => {
                rotation += step_angle;
                // Pivot about the current gel contact point.
                let pivot = gelcontact::contact_angle(&pose, gel, obj, friction)?.contact_point_a;
                let center = pose.object_pose.position;
                pose.object_pose.position = pivot + (center - pivot).rotated(step_angle);
                pose.object_pose.rotation += step_angle;
            }
        }
    }
    Ok(RollingSweep {
        final_phase: GraspPhase::Stuck,
        rotation,
        steps: max_steps,
        last_torque,
        transitioned: false,
    })
}

/// Sliding-grasp criterion for rounded-edge objects: the tip must be finer
/// than the object's lower edge, and the lifting force must beat half the
/// weight (both strict).
pub fn sliding_grasp_criterion(
    obj: &RigidObject2D,
    nail: &FingernailSpec,
    f_fy: f64,
    env: &Environment,
) -> Result<bool, NailGraspError> {
    let edge_radius = match obj.edge {
        crate::catalog::EdgeGeometry::Round { radius } => radius,
        crate::catalog::EdgeGeometry::Sharp => {
            return Err(NailGraspError::WrongEdgeKind {
                expected: "round",
                name: obj.name.clone(),
            })
        }
    };
    Ok(edge_radius > nail.tip_radius && f_fy > obj.mass * env.gravity / 2.0)
}
