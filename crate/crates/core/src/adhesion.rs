//! Tap-grasp physics: surface adhesion versus weight.
//!
//! A pressed gel holds a small object through an electrostatic term and a
//! van der Waals term,
//!
//! ```text
//! F_adh = F_e + F_vdW + F_st
//!       ~ pi*eps0*R_o*sigma^2 / d  +  A*R_o*R_dt / (6*(R_o + R_dt)*d^2)
//! ```
//!
//! with surface tension F_st = 0 in a dry setup. The object lifts when
//! `F_adh - m*g` is positive. `A` sits in the Hamaker position of the
//! sphere-sphere van der Waals formula and is treated here as a
//! Hamaker-like energy constant; area effects are carried separately by
//! `contact_area_scale`. None of sigma, A, d are measured quantities:
//! they are calibrated against the bundled gel-finish lift study and the
//! outputs are calibration-consistency numbers, not predictions.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};
use thiserror::Error;

use crate::catalog::{Environment, MaterialClass, RigidObject2D};

/// F/m
pub const VACUUM_PERMITTIVITY: f64 = 8.8541878128e-12;

/// Conductive objects dissipate tribocharge; their electrostatic term is
/// scaled down by this factor.
pub const METALLIC_CHARGE_SCREENING: f64 = 0.01;

#[derive(Debug, Error, PartialEq)]
pub enum AdhesionError {
    #[error("separation distance must be strictly positive (got {0})")]
    NonPositiveSeparation(f64),
    #[error("invalid adhesion parameter: {0}")]
    InvalidParameter(&'static str),
}

/// All coefficients of the adhesion balance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdhesionParams {
    /// F/m, electric constant.
    pub epsilon0: f64,
    /// C/m^2, effective charge density of the object/surface pairing.
    pub charge_density_sigma: f64,
    /// J, Hamaker-like energy constant of the van der Waals term.
    pub hamaker_a: f64,
    /// m, object-gel separation at release.
    pub separation_d: f64,
    /// m, effective sensor radius (defaults to the gel curvature radius).
    pub sensor_radius: f64,
    /// Dimensionless (0, 1]: gel-finish contact efficiency times the
    /// press-depth factor.
    pub contact_area_scale: f64,
    /// Hold-time margin: a positive net force below this multiple of the
    /// object weight only holds briefly (a "short lift").
    pub margin_threshold: f64,
}

impl Default for AdhesionParams {
    fn default() -> Self {
        AdhesionParams {
            epsilon0: VACUUM_PERMITTIVITY,
            charge_density_sigma: 0.66,
            hamaker_a: 1.0e-19,
            separation_d: 0.4e-9,
            sensor_radius: crate::catalog::GEL_CURVATURE_RADIUS,
            contact_area_scale: 1.0,
            margin_threshold: 0.5,
        }
    }
}

impl AdhesionParams {
    pub fn validate(&self) -> Result<(), AdhesionError> {
        if !(self.separation_d > 0.0) {
            return Err(AdhesionError::NonPositiveSeparation(self.separation_d));
        }
        if !(self.epsilon0 > 0.0) {
            return Err(AdhesionError::InvalidParameter("epsilon0 must be positive"));
        }
        if !(self.hamaker_a > 0.0) {
            return Err(AdhesionError::InvalidParameter("hamaker constant must be positive"));
        }
        if !(self.contact_area_scale > 0.0 && self.contact_area_scale <= 1.0) {
            return Err(AdhesionError::InvalidParameter("contact_area_scale must be in (0, 1]"));
        }
        Ok(())
    }
}

/// Electrostatic pull `pi*eps0*R_o*sigma^2 / d`, screened for conductive
/// objects.
pub fn electrostatic_force(
    params: &AdhesionParams,
    obj: &RigidObject2D,
) -> Result<f64, AdhesionError> {
    if !(params.separation_d > 0.0) {
        return Err(AdhesionError::NonPositiveSeparation(params.separation_d));
    }
    let sigma = params.charge_density_sigma;
    let base = std::f64::consts::PI * params.epsilon0 * obj.effective_radius * sigma * sigma
        / params.separation_d;
    let factor = match obj.material {
        MaterialClass::Metallic => METALLIC_CHARGE_SCREENING,
        MaterialClass::Nonmetallic => 1.0,
    };
    Ok(base * factor)
}

/// Sphere-sphere van der Waals term `A*R_o*R_dt / (6*(R_o+R_dt)*d^2)`,
/// scaled by the realized contact area fraction.
pub fn vdw_force(params: &AdhesionParams, obj: &RigidObject2D) -> Result<f64, AdhesionError> {
    if !(params.separation_d > 0.0) {
        return Err(AdhesionError::NonPositiveSeparation(params.separation_d));
    }
    let ro = obj.effective_radius;
    let rdt = params.sensor_radius;
    let d = params.separation_d;
    Ok(params.hamaker_a * ro * rdt / (6.0 * (ro + rdt) * d * d) * params.contact_area_scale)
}

/// Total adhesion force. Surface tension is zero in the dry setup.
pub fn adhesion_force(params: &AdhesionParams, obj: &RigidObject2D) -> Result<f64, AdhesionError> {
    Ok(electrostatic_force(params, obj)? + vdw_force(params, obj)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftCategory {
    /// Held beyond the 3 s bench cutoff.
    Lift,
    /// Lifted but released within 3 s.
    ShortLift,
    NoLift,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftOutcome {
    pub category: LiftCategory,
    /// N, net upward force `F_adh - m*g`.
    pub net_force: f64,
}

impl LiftOutcome {
    pub fn is_success(&self) -> bool {
        self.category != LiftCategory::NoLift
    }
}

/// Net-force balance. A boundary net force of exactly zero does not lift.
/// Positive net force splits into lift / short lift by the hold-time
/// margin: a weightless object always holds.
pub fn lift_criterion(
    params: &AdhesionParams,
    obj: &RigidObject2D,
    env: &Environment,
) -> Result<LiftOutcome, AdhesionError> {
    let f_adh = adhesion_force(params, obj)?;
    let weight = obj.weight(env.gravity);
    let net = f_adh - weight;
    let category = if net <= 0.0 {
        LiftCategory::NoLift
    } else if weight > 0.0 && net / weight < params.margin_threshold {
        LiftCategory::ShortLift
    } else {
        LiftCategory::Lift
    };
    Ok(LiftOutcome { category, net_force: net })
}

/// Per-trial perturbation spans. Release separation jitters log-normally;
/// realized contact area and charge jitter uniformly. Debris and cleaning
/// effects are folded into these spans rather than modeled separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TapJitter {
    /// Log-stdev of the separation jitter.
    pub separation_sigma_log: f64,
    /// Half-span of the uniform relative jitter on contact area.
    pub area_span: f64,
    /// Half-span of the uniform relative jitter on charge density.
    pub charge_span: f64,
}

impl Default for TapJitter {
    fn default() -> Self {
        TapJitter { separation_sigma_log: 0.3, area_span: 0.2, charge_span: 0.1 }
    }
}

/// One stochastic tap trial: perturb the contact parameters, then apply the
/// lift criterion. Deterministic for a given seed.
pub fn sample_tap_trial(
    params: &AdhesionParams,
    obj: &RigidObject2D,
    env: &Environment,
    jitter: &TapJitter,
    seed: u64,
) -> Result<LiftOutcome, AdhesionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_tap_trial_with_rng(params, obj, env, jitter, &mut rng))
}

/// As [`sample_tap_trial`], drawing from a caller-owned RNG stream.
pub fn sample_tap_trial_with_rng(
    params: &AdhesionParams,
    obj: &RigidObject2D,
    env: &Environment,
    jitter: &TapJitter,
    rng: &mut ChaCha8Rng,
) -> LiftOutcome {
    let log_normal = LogNormal::new(0.0, jitter.separation_sigma_log)
        .expect("jitter sigma is finite and non-negative");
    let d_factor: f64 = log_normal.sample(rng);
    let area_factor: f64 = rng.random_range(1.0 - jitter.area_span..=1.0 + jitter.area_span);
    let charge_factor: f64 = rng.random_range(1.0 - jitter.charge_span..=1.0 + jitter.charge_span);

    let perturbed = AdhesionParams {
        separation_d: params.separation_d * d_factor,
        contact_area_scale: params.contact_area_scale * area_factor,
        charge_density_sigma: params.charge_density_sigma * charge_factor,
        ..*params
    };
    // Perturbed inputs keep d > 0, so the criterion cannot fail.
    lift_criterion(&perturbed, obj, env).expect("perturbed separation stays positive")
}
