//! Domain types, units, and the object/material/gel catalogs.
//!
//! All quantities are SI internally (m, kg, N). Catalog files keep the
//! bench conventions (mm, grams); conversion happens only at this
//! boundary, nowhere else.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Object surface class; conductive objects barely hold triboelectric charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaterialClass {
    Metallic,
    Nonmetallic,
}

/// Lower-edge profile of the object, which selects the fingernail sub-strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeGeometry {
    Sharp,
    /// `radius` is the radius of the lower edge fillet, meters.
    Round { radius: f64 },
}

impl EdgeGeometry {
    pub fn is_round(&self) -> bool {
        matches!(self, EdgeGeometry::Round { .. })
    }
}

/// Planar rigid object resting on the work surface.
///
/// `length` is the larger planar dimension (the free-body x extent),
/// `width` the smaller one, `height` the vertical extent.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidObject2D {
    pub name: String,
    /// m, larger planar dimension.
    pub length: f64,
    /// m, vertical extent.
    pub height: f64,
    /// m, smaller planar dimension (unused by the 2D mechanics).
    pub width: f64,
    /// kg
    pub mass: f64,
    pub edge: EdgeGeometry,
    pub material: MaterialClass,
    /// m, effective radius for the adhesion model. Defaults to half the
    /// larger planar dimension of the footprint.
    pub effective_radius: f64,
}

impl RigidObject2D {
    /// Build an object from bench units (mm / g), deriving the effective
    /// radius. `dims_mm` is ordered [height, planar, planar].
    pub fn from_bench_units(
        name: &str,
        dims_mm: [f64; 3],
        mass_g: f64,
        material: MaterialClass,
        edge: EdgeGeometry,
    ) -> Result<Self, CatalogError> {
        let height = dims_mm[0] * 1e-3;
        let length = dims_mm[1].max(dims_mm[2]) * 1e-3;
        let width = dims_mm[1].min(dims_mm[2]) * 1e-3;
        let obj = RigidObject2D {
            name: name.to_string(),
            length,
            height,
            width,
            mass: mass_g * 1e-3,
            edge,
            material,
            effective_radius: length / 2.0,
        };
        obj.validate()?;
        Ok(obj)
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |reason: &str| {
            Err(CatalogError::Validation {
                entry: self.name.clone(),
                reason: reason.to_string(),
            })
        };
        if !(self.length > 0.0 && self.height > 0.0 && self.width > 0.0) {
            return bad("dimensions must be strictly positive");
        }
        if !(self.mass > 0.0) {
            return bad("mass must be strictly positive");
        }
        if !(self.effective_radius > 0.0) {
            return bad("effective radius must be strictly positive");
        }
        if let EdgeGeometry::Round { radius } = self.edge {
            if !(radius > 0.0) {
                return bad("edge radius must be strictly positive");
            }
            if radius >= self.length / 2.0 {
                return bad("edge radius must be smaller than half the object length");
            }
        }
        Ok(())
    }

    /// Weight under the given gravity, N.
    pub fn weight(&self, gravity: f64) -> f64 {
        self.mass * gravity
    }
}

/// Reflective-coating finish of the gel; controls how much of the nominal
/// contact area is realized when tapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GelFinish {
    Gloss,
    MatteGloss,
    Matte,
}

impl GelFinish {
    pub const ALL: [GelFinish; 3] = [GelFinish::Gloss, GelFinish::MatteGloss, GelFinish::Matte];

    pub fn label(&self) -> &'static str {
        match self {
            GelFinish::Gloss => "gloss",
            GelFinish::MatteGloss => "matte_gloss",
            GelFinish::Matte => "matte",
        }
    }
}

/// Soft gel fingertip: spherical cap cast from a 30 mm mold, 16 Shore A.
#[derive(Debug, Clone, PartialEq)]
pub struct GelSpec {
    pub finish: GelFinish,
    /// m, radius of the spherical surface (15 mm from the 30 mm mold).
    pub curvature_radius: f64,
    pub shore_hardness_a: f64,
    /// Fraction of the nominal contact area realized by this finish, (0, 1].
    pub contact_efficiency: f64,
    /// Yeoh C10/C20/C30 coefficients, Pa. Configuration for a 16 Shore A
    /// silicone, not a measured ground truth.
    pub yeoh_coefficients: [f64; 3],
}

pub const GEL_CURVATURE_RADIUS: f64 = 15e-3;
pub const GEL_SHORE_HARDNESS_A: f64 = 16.0;
pub const DEFAULT_YEOH_COEFFICIENTS: [f64; 3] = [0.11e6, 0.02e6, 0.001e6];

/// Default contact efficiency per finish. Free parameters tuned by the
/// calibration harness; ordering gloss >= matte_gloss >= matte is a model
/// validity requirement.
pub fn default_contact_efficiency(finish: GelFinish) -> f64 {
    match finish {
        GelFinish::Gloss => 1.0,
        GelFinish::MatteGloss => 0.45,
        GelFinish::Matte => 0.08,
    }
}

impl GelSpec {
    pub fn with_finish(finish: GelFinish) -> Self {
        GelSpec {
            finish,
            curvature_radius: GEL_CURVATURE_RADIUS,
            shore_hardness_a: GEL_SHORE_HARDNESS_A,
            contact_efficiency: default_contact_efficiency(finish),
            yeoh_coefficients: DEFAULT_YEOH_COEFFICIENTS,
        }
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |reason: &str| {
            Err(CatalogError::Validation {
                entry: format!("gel[{}]", self.finish.label()),
                reason: reason.to_string(),
            })
        };
        if !(self.curvature_radius > 0.0) {
            return bad("curvature radius must be positive");
        }
        if !(self.contact_efficiency > 0.0 && self.contact_efficiency <= 1.0) {
            return bad("contact efficiency must lie in (0, 1]");
        }
        if !(self.yeoh_coefficients[0] > 0.0) {
            return bad("leading Yeoh coefficient must be positive");
        }
        Ok(())
    }
}

impl Default for GelSpec {
    fn default() -> Self {
        GelSpec::with_finish(GelFinish::Gloss)
    }
}

/// Rigid printed fingernail mounted above the gel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FingernailSpec {
    /// m, radius of the printed tip edge.
    pub tip_radius: f64,
    /// degrees, wedge angle at the tip.
    pub tip_angle_deg: f64,
    /// degrees of the sensor field of view occluded by the nail.
    pub fov_occupancy_deg: f64,
}

impl Default for FingernailSpec {
    fn default() -> Self {
        FingernailSpec { tip_radius: 0.3e-3, tip_angle_deg: 27.7, fov_occupancy_deg: 10.4 }
    }
}

impl FingernailSpec {
    pub fn validate(&self) -> Result<(), CatalogError> {
        if !(self.tip_radius > 0.0) || !(self.tip_angle_deg > 0.0 && self.tip_angle_deg < 90.0) {
            return Err(CatalogError::Validation {
                entry: "fingernail".to_string(),
                reason: "tip radius must be positive and tip angle in (0, 90) degrees".to_string(),
            });
        }
        Ok(())
    }
}

/// Friction coefficients of the three contact pairs in the free-body model.
/// The gel pair must dominate for the pivot-at-gel analysis to apply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrictionSet {
    /// gel-object
    pub mu_gel_object: f64,
    /// work surface-object
    pub mu_surface_object: f64,
    /// fingernail-object
    pub mu_nail_object: f64,
}

impl Default for FrictionSet {
    fn default() -> Self {
        FrictionSet { mu_gel_object: 0.9, mu_surface_object: 0.3, mu_nail_object: 0.3 }
    }
}

impl FrictionSet {
    pub fn validate(&self) -> Result<(), CatalogError> {
        let all = [self.mu_gel_object, self.mu_surface_object, self.mu_nail_object];
        if all.iter().any(|mu| !(*mu > 0.0 && *mu <= 2.0)) {
            return Err(CatalogError::Validation {
                entry: "friction".to_string(),
                reason: "coefficients must lie in (0, 2]".to_string(),
            });
        }
        if self.mu_gel_object <= self.mu_surface_object
            || self.mu_gel_object <= self.mu_nail_object
        {
            return Err(CatalogError::Validation {
                entry: "friction".to_string(),
                reason: "gel-object friction must dominate both other pairs".to_string(),
            });
        }
        Ok(())
    }

    /// True when the gel contact no longer dominates; the pivot analysis is
    /// invalid in that regime.
    pub fn gel_dominates(&self) -> bool {
        self.mu_gel_object > self.mu_surface_object.max(self.mu_nail_object)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceMaterial {
    Acrylic,
    Wood,
    Paper,
}

/// Experiment environment. Trials are dry, so the surface-tension term of
/// the adhesion balance is identically zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Environment {
    pub surface_material: SurfaceMaterial,
    /// m/s^2
    pub gravity: f64,
}

pub const STANDARD_GRAVITY: f64 = 9.80665;

impl Default for Environment {
    fn default() -> Self {
        Environment { surface_material: SurfaceMaterial::Acrylic, gravity: STANDARD_GRAVITY }
    }
}

impl Environment {
    pub fn validate(&self) -> Result<(), CatalogError> {
        if !(self.gravity > 0.0) {
            return Err(CatalogError::Validation {
                entry: "environment".to_string(),
                reason: "gravity must be positive".to_string(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("failed to read catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog parse error: {0}")]
    Parse(String),
    #[error("invalid catalog entry '{entry}': {reason}")]
    Validation { entry: String, reason: String },
}

#[derive(Debug, Serialize, Deserialize)]
struct CatalogFile {
    #[serde(default, rename = "object")]
    objects: Vec<CatalogEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CatalogEntry {
    name: String,
    /// [height, planar, planar] in mm.
    dims_mm: [f64; 3],
    mass_g: f64,
    material: MaterialClass,
    edge: EdgeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_radius_mm: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum EdgeKind {
    Sharp,
    Round,
}

impl CatalogEntry {
    fn into_object(self) -> Result<RigidObject2D, CatalogError> {
        let edge = match (self.edge, self.edge_radius_mm) {
            (EdgeKind::Sharp, None) => EdgeGeometry::Sharp,
            (EdgeKind::Sharp, Some(_)) => {
                return Err(CatalogError::Validation {
                    entry: self.name,
                    reason: "edge_radius_mm given for a sharp edge".to_string(),
                })
            }
            (EdgeKind::Round, Some(r)) => EdgeGeometry::Round { radius: r * 1e-3 },
            (EdgeKind::Round, None) => {
                return Err(CatalogError::Validation {
                    entry: self.name,
                    reason: "round edge requires edge_radius_mm".to_string(),
                })
            }
        };
        RigidObject2D::from_bench_units(&self.name, self.dims_mm, self.mass_g, self.material, edge)
    }

    fn from_object(obj: &RigidObject2D) -> CatalogEntry {
        let (edge, edge_radius_mm) = match obj.edge {
            EdgeGeometry::Sharp => (EdgeKind::Sharp, None),
            EdgeGeometry::Round { radius } => (EdgeKind::Round, Some(radius * 1e3)),
        };
        CatalogEntry {
            name: obj.name.clone(),
            dims_mm: [obj.height * 1e3, obj.length * 1e3, obj.width * 1e3],
            mass_g: obj.mass * 1e3,
            material: obj.material,
            edge,
            edge_radius_mm,
        }
    }
}

/// Load and validate a catalog file (TOML, one `[[object]]` block per object).
pub fn load_catalog(path: &Path) -> Result<Vec<RigidObject2D>, CatalogError> {
    let text = fs::read_to_string(path)?;
    parse_catalog(&text)
}

pub fn parse_catalog(text: &str) -> Result<Vec<RigidObject2D>, CatalogError> {
    let file: CatalogFile =
        toml::from_str(text).map_err(|e| CatalogError::Parse(e.to_string()))?;
    file.objects.into_iter().map(CatalogEntry::into_object).collect()
}

/// Serialize objects back into the catalog file format.
pub fn serialize_catalog(objects: &[RigidObject2D]) -> String {
    let file = CatalogFile { objects: objects.iter().map(CatalogEntry::from_object).collect() };
    toml::to_string(&file).expect("catalog serialization cannot fail")
}

pub fn save_catalog(path: &Path, objects: &[RigidObject2D]) -> Result<(), CatalogError> {
    fs::write(path, serialize_catalog(objects))?;
    Ok(())
}

/// The eight bundled evaluation objects with their published dimensions and
/// weights. Nuts, wrench and paperclip have crisp stamped edges; the seed,
/// coin, battery and bearing have rounded lower edges.
pub fn builtin_catalog() -> Vec<RigidObject2D> {
    let entries: [(&str, [f64; 3], f64, MaterialClass, EdgeGeometry); 8] = [
        (
            "Basil Seed",
            [1.0, 1.2, 2.0],
            0.0015,
            MaterialClass::Nonmetallic,
            EdgeGeometry::Round { radius: 0.5e-3 },
        ),
        ("M1.6 Nut", [1.1, 3.2, 3.2], 0.051, MaterialClass::Metallic, EdgeGeometry::Sharp),
        ("M2 Nut", [1.6, 3.9, 3.9], 0.10, MaterialClass::Metallic, EdgeGeometry::Sharp),
        ("Paperclip", [0.8, 6.9, 26.5], 0.31, MaterialClass::Metallic, EdgeGeometry::Sharp),
        ("Small Wrench", [0.9, 7.0, 45.0], 1.95, MaterialClass::Metallic, EdgeGeometry::Sharp),
        (
            "Dime",
            [1.3, 17.9, 17.9],
            2.24,
            MaterialClass::Metallic,
            EdgeGeometry::Round { radius: 0.9e-3 },
        ),
        (
            "CR2032 Battery",
            [3.2, 20.0, 20.0],
            3.00,
            MaterialClass::Metallic,
            EdgeGeometry::Round { radius: 1.6e-3 },
        ),
        (
            "Bearing",
            [16.0, 5.0, 16.0],
            4.57,
            MaterialClass::Metallic,
            EdgeGeometry::Round { radius: 2.5e-3 },
        ),
    ];
    entries
        .into_iter()
        .map(|(name, dims, mass, material, edge)| {
            RigidObject2D::from_bench_units(name, dims, mass, material, edge)
                .expect("builtin catalog entries are valid")
        })
        .collect()
}

/// Case-insensitive lookup by object name.
pub fn find_object<'a>(catalog: &'a [RigidObject2D], name: &str) -> Option<&'a RigidObject2D> {
    let needle = name.to_ascii_lowercase();
    catalog.iter().find(|o| o.name.to_ascii_lowercase() == needle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn builtin_has_eight_valid_objects() {
        let catalog = builtin_catalog();
        assert_eq!(catalog.len(), 8);
        for obj in &catalog {
            obj.validate().unwrap();
        }
    }

    #[test]
    fn builtin_dimensions_and_masses() {
        let catalog = builtin_catalog();
        let m2 = find_object(&catalog, "M2 Nut").unwrap();
        assert_relative_eq!(m2.height, 1.6e-3);
        assert_relative_eq!(m2.length, 3.9e-3);
        assert_relative_eq!(m2.mass, 1.0e-4);

        let seed = find_object(&catalog, "Basil Seed").unwrap();
        assert_relative_eq!(seed.mass, 1.5e-6);

        let dime = find_object(&catalog, "Dime").unwrap();
        assert_relative_eq!(dime.height, 1.3e-3);
        assert_relative_eq!(dime.length, 17.9e-3);
        assert_relative_eq!(dime.mass, 2.24e-3);

        let bearing = find_object(&catalog, "Bearing").unwrap();
        assert_relative_eq!(bearing.height, 16e-3);
        assert_relative_eq!(bearing.width, 5e-3);
        assert_relative_eq!(bearing.mass, 4.57e-3);
    }

    #[test]
    fn effective_radius_defaults_to_half_length() {
        let catalog = builtin_catalog();
        for obj in &catalog {
            assert_relative_eq!(obj.effective_radius, obj.length / 2.0);
        }
    }

    #[test]
    fn empty_catalog_is_ok() {
        assert!(parse_catalog("").unwrap().is_empty());
    }

    #[test]
    fn parse_rejects_malformed_entry() {
        let text = "[[object]]\nname = \"thing\"\ndims_mm = [1.0]\n";
        assert!(matches!(parse_catalog(text), Err(CatalogError::Parse(_))));
    }

    #[test]
    fn validation_names_offending_entry() {
        let text = r#"
[[object]]
name = "Bad Washer"
dims_mm = [1.0, 4.0, 4.0]
mass_g = 0.0
material = "metallic"
edge = "sharp"
"#;
        match parse_catalog(text) {
            Err(CatalogError::Validation { entry, .. }) => assert_eq!(entry, "Bad Washer"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn round_edge_requires_radius() {
        let text = r#"
[[object]]
name = "Disc"
dims_mm = [1.0, 9.0, 9.0]
mass_g = 1.0
material = "metallic"
edge = "round"
"#;
        assert!(matches!(parse_catalog(text), Err(CatalogError::Validation { .. })));
    }

    #[test]
    fn serialize_load_round_trip() {
        let catalog = builtin_catalog();
        let text = serialize_catalog(&catalog);
        let reloaded = parse_catalog(&text).unwrap();
        assert_eq!(catalog, reloaded);
    }

    #[test]
    fn gel_finish_efficiency_ordering() {
        let gloss = default_contact_efficiency(GelFinish::Gloss);
        let matte_gloss = default_contact_efficiency(GelFinish::MatteGloss);
        let matte = default_contact_efficiency(GelFinish::Matte);
        assert!(gloss >= matte_gloss && matte_gloss >= matte);
    }

    #[test]
    fn default_specs_validate() {
        GelSpec::default().validate().unwrap();
        FingernailSpec::default().validate().unwrap();
        FrictionSet::default().validate().unwrap();
        Environment::default().validate().unwrap();
    }

    #[test]
    fn friction_rejects_non_dominant_gel() {
        let f = FrictionSet { mu_gel_object: 0.3, mu_surface_object: 0.3, mu_nail_object: 0.2 };
        assert!(f.validate().is_err());
    }
}
