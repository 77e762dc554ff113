//! Synthetic tactile frames and the baseline-differencing grasp detector.
//!
//! The camera sits under the gel dome and views its reflective inner
//! surface through a wide fisheye lens. Three colored LEDs light the dome
//! from below; pressing an object deforms the surface, tilting normals and
//! changing each channel's shading. Frames are rendered by inverse
//! mapping: each pixel's ray is intersected with the undeformed dome and
//! the deformation field is sampled there (small-deformation
//! approximation), then shaded Lambertian per LED with inverse-square
//! falloff. The detector never reconstructs geometry: it scores a frame by
//! its noise-floored mean absolute difference to an empty-press baseline,
//! normalized by the empty-to-object baseline gap.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::catalog::GelSpec;
use crate::geometry::Vec2;

#[derive(Debug, Error)]
pub enum SensorError {
    #[error("deformation {max:.3e} m exceeds the gel thickness bound {bound:.3e} m")]
    DeformationBound { max: f64, bound: f64 },
    #[error("frame dimensions {a}x{b} do not match baselines {c}x{d}")]
    DimensionMismatch { a: usize, b: usize, c: usize, d: usize },
    #[error("detector baselines are degenerate: {0}")]
    DegenerateBaselines(&'static str),
    #[error("height map is not square (rows {rows}, cols {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Square deformation field over the gel's tangent plane, meters of inward
/// displacement, sampled on a grid spanning [-extent, extent] on both axes.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightMap {
    size: usize,
    extent: f64,
    data: Vec<f64>,
}

impl HeightMap {
    pub fn flat(size: usize, extent: f64) -> Self {
        HeightMap { size, extent, data: vec![0.0; size * size] }
    }

    pub fn from_fn(size: usize, extent: f64, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut data = Vec::with_capacity(size * size);
        for row in 0..size {
            let y = Self::coord(row, size, extent);
            for col in 0..size {
                let x = Self::coord(col, size, extent);
                data.push(f(x, y));
            }
        }
        HeightMap { size, extent, data }
    }

    fn coord(index: usize, size: usize, extent: f64) -> f64 {
        -extent + 2.0 * extent * index as f64 / (size - 1) as f64
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn max_value(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    /// Bilinear sample; zero outside the grid.
    pub fn sample(&self, x: f64, y: f64) -> f64 {
        let n = self.size;
        let fx = (x + self.extent) / (2.0 * self.extent) * (n - 1) as f64;
        let fy = (y + self.extent) / (2.0 * self.extent) * (n - 1) as f64;
        if fx < 0.0 || fy < 0.0 || fx > (n - 1) as f64 || fy > (n - 1) as f64 {
            return 0.0;
        }
        let x0 = fx.floor() as usize;
        let y0 = fy.floor() as usize;
        let x1 = (x0 + 1).min(n - 1);
        let y1 = (y0 + 1).min(n - 1);
        let tx = fx - x0 as f64;
        let ty = fy - y0 as f64;
        let at = |r: usize, c: usize| self.data[r * n + c];
        let top = at(y0, x0) * (1.0 - tx) + at(y0, x1) * tx;
        let bot = at(y1, x0) * (1.0 - tx) + at(y1, x1) * tx;
        top * (1.0 - ty) + bot * ty
    }

    /// Central-difference gradient of the sampled field.
    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let h = 2.0 * self.extent / (self.size - 1) as f64;
        let gx = (self.sample(x + h, y) - self.sample(x - h, y)) / (2.0 * h);
        let gy = (self.sample(x, y + h) - self.sample(x, y - h)) / (2.0 * h);
        (gx, gy)
    }

    /// Plain-text matrix: one row per line, whitespace-separated meters.
    pub fn save_text(&self, path: &Path) -> Result<(), SensorError> {
        let mut out = String::new();
        for row in 0..self.size {
            let cells: Vec<String> =
                (0..self.size).map(|c| format!("{:e}", self.data[row * self.size + c])).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        fs::write(path, out)?;
        Ok(())
    }

    pub fn load_text(path: &Path, extent: f64) -> Result<Self, SensorError> {
        let text = fs::read_to_string(path)?;
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let row: Result<Vec<f64>, _> =
                line.split_whitespace().map(str::parse::<f64>).collect();
            rows.push(row.map_err(|e| SensorError::Parse(e.to_string()))?);
        }
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            let cols = rows.first().map(|r| r.len()).unwrap_or(0);
            return Err(SensorError::NotSquare { rows: size, cols });
        }
        Ok(HeightMap { size, extent, data: rows.into_iter().flatten().collect() })
    }
}

/// Rectangular press footprint with a Gaussian skirt, used to build the
/// deformation from an object resting on the gel.
#[derive(Debug, Clone, Copy)]
pub struct PressFootprint {
    pub center: Vec2,
    pub half_length: f64,
    pub half_width: f64,
    pub rotation: f64,
    /// m, indentation at the footprint interior.
    pub depth: f64,
    /// m, lateral falloff of the gel skirt around the footprint.
    pub spread_sigma: f64,
}

impl PressFootprint {
    pub fn height_map(&self, size: usize, extent: f64) -> HeightMap {
        let (sin, cos) = self.rotation.sin_cos();
        HeightMap::from_fn(size, extent, |x, y| {
            let dx = x - self.center.x;
            let dy = y - self.center.y;
            let lx = cos * dx + sin * dy;
            let ly = -sin * dx + cos * dy;
            let qx = (lx.abs() - self.half_length).max(0.0);
            let qy = (ly.abs() - self.half_width).max(0.0);
            let outside = qx.hypot(qy);
            self.depth * (-(outside / self.spread_sigma).powi(2)).exp()
        })
    }
}

/// Rendered tactile frame, RGB intensities in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SensorFrame {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<[f32; 3]>,
    pub timestamp_ms: u64,
}

impl SensorFrame {
    pub fn save_ppm(&self, path: &Path) -> Result<(), SensorError> {
        let mut file = fs::File::create(path)?;
        write!(file, "P6\n{} {}\n255\n", self.width, self.height)?;
        let mut bytes = Vec::with_capacity(self.width * self.height * 3);
        for px in &self.pixels {
            for c in px {
                bytes.push((c.clamp(0.0, 1.0) * 255.0).round() as u8);
            }
        }
        file.write_all(&bytes)?;
        Ok(())
    }

    pub fn load_ppm(path: &Path) -> Result<Self, SensorError> {
        let bytes = fs::read(path)?;
        let header_err = || SensorError::Parse("bad ppm header".to_string());
        // Header: magic, width, height, maxval, single whitespace, raster.
        let mut fields = Vec::new();
        let mut pos = 0;
        while fields.len() < 4 && pos < bytes.len() {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| header_err())?);
        }
        if fields.len() != 4 || fields[0] != "P6" || fields[3] != "255" {
            return Err(header_err());
        }
        let width: usize = fields[1].parse().map_err(|_| header_err())?;
        let height: usize = fields[2].parse().map_err(|_| header_err())?;
        pos += 1; // single whitespace after maxval
        let raster = &bytes[pos..];
        if raster.len() != width * height * 3 {
            return Err(SensorError::Parse("raster size mismatch".to_string()));
        }
        let pixels = raster
            .chunks_exact(3)
            .map(|c| [c[0] as f32 / 255.0, c[1] as f32 / 255.0, c[2] as f32 / 255.0])
            .collect();
        Ok(SensorFrame { width, height, pixels, timestamp_ms: 0 })
    }
}

/// Fingernail occlusion: an azimuthal wedge of the sensor view.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeMask {
    pub azimuth_deg: f64,
    pub width_deg: f64,
}

impl WedgeMask {
    fn contains(&self, azimuth: f64) -> bool {
        let half = self.width_deg.to_radians() / 2.0;
        let delta = (azimuth - self.azimuth_deg.to_radians() + std::f64::consts::PI)
            .rem_euclid(2.0 * std::f64::consts::PI)
            - std::f64::consts::PI;
        delta.abs() <= half
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    /// Pixels per side of the square frame.
    pub frame_size: usize,
    /// Equidistant fisheye focal length, px per radian of ray angle. Sized
    /// so a 1-2 mm press reads as a blob of roughly fifty pixels.
    pub focal_px_per_rad: f64,
    /// degrees, lens field of view.
    pub fov_deg: f64,
    /// m, optical center below the gel apex.
    pub lens_depth: f64,
    /// m, lateral radius of the rendered gel cap.
    pub dome_extent: f64,
    /// m, LED ring radius and height above the optical center.
    pub led_ring_radius: f64,
    pub led_height: f64,
    /// degrees, LED azimuths feeding the R, G, B channels.
    pub led_azimuths_deg: [f64; 3],
    pub ambient: f64,
    pub albedo: f64,
    /// m, gel thickness bound on deformations.
    pub max_deformation: f64,
    /// Occluding nail wedge, when mounted.
    pub nail_wedge: Option<WedgeMask>,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            frame_size: 480,
            focal_px_per_rad: 160.0,
            fov_deg: 222.0,
            lens_depth: 7.6e-3,
            dome_extent: 9.0e-3,
            led_ring_radius: 9.0e-3,
            led_height: 1.0e-3,
            led_azimuths_deg: [0.0, 120.0, 240.0],
            ambient: 0.06,
            albedo: 0.85,
            max_deformation: 3.0e-3,
            nail_wedge: None,
        }
    }
}

/// Per-pixel geometry of the undeformed dome, precomputed once.
#[derive(Debug, Clone, Copy)]
struct PixelGeom {
    x: f64,
    y: f64,
    z: f64,
    slope_x: f64,
    slope_y: f64,
    azimuth: f64,
}

#[derive(Debug, Clone)]
pub struct Renderer {
    cfg: RenderConfig,
    gel_radius: f64,
    leds: [[f64; 3]; 3],
    pixmap: Vec<Option<PixelGeom>>,
}

impl Renderer {
    pub fn new(cfg: RenderConfig, gel: &GelSpec) -> Self {
        let radius = gel.curvature_radius;
        let center_z = cfg.lens_depth - radius;
        let n = cfg.frame_size;
        let half = n as f64 / 2.0;
        let theta_max = (cfg.fov_deg.to_radians() / 2.0).min(std::f64::consts::PI - 1e-6);

        let mut pixmap = Vec::with_capacity(n * n);
        for iy in 0..n {
            for ix in 0..n {
                let dx = ix as f64 + 0.5 - half;
                let dy = iy as f64 + 0.5 - half;
                let theta = dx.hypot(dy) / cfg.focal_px_per_rad;
                if theta >= theta_max {
                    pixmap.push(None);
                    continue;
                }
                let azimuth = dy.atan2(dx);
                let (st, ct) = (theta.sin(), theta.cos());
                let dir = [st * azimuth.cos(), st * azimuth.sin(), ct];
                // Ray-sphere intersection from inside the dome sphere.
                let dc = dir[2] * center_z;
                let disc = dc * dc - center_z * center_z + radius * radius;
                let t = dc + disc.sqrt();
                let (px, py, pz) = (dir[0] * t, dir[1] * t, dir[2] * t);
                if pz <= 0.0 || px.hypot(py) > cfg.dome_extent {
                    pixmap.push(None);
                    continue;
                }
                let s = (radius * radius - px * px - py * py).sqrt();
                pixmap.push(Some(PixelGeom {
                    x: px,
                    y: py,
                    z: pz,
                    slope_x: -px / s,
                    slope_y: -py / s,
                    azimuth,
                }));
            }
        }

        let leds = cfg.led_azimuths_deg.map(|az| {
            let a = az.to_radians();
            [cfg.led_ring_radius * a.cos(), cfg.led_ring_radius * a.sin(), cfg.led_height]
        });
        Renderer { cfg, gel_radius: radius, leds, pixmap }
    }

    pub fn config(&self) -> &RenderConfig {
        &self.cfg
    }

    pub fn frame_size(&self) -> usize {
        self.cfg.frame_size
    }

    /// Render a deformation field into a tactile frame. Deterministic.
    pub fn render(&self, map: &HeightMap, timestamp_ms: u64) -> Result<SensorFrame, SensorError> {
        let max = map.max_value();
        if max > self.cfg.max_deformation {
            return Err(SensorError::DeformationBound {
                max,
                bound: self.cfg.max_deformation,
            });
        }
        let _ = self.gel_radius;
        let n = self.cfg.frame_size;
        let mut pixels = vec![[0.0f32; 3]; n * n];
        for (idx, geom) in self.pixmap.iter().enumerate() {
            let Some(g) = geom else { continue };
            if let Some(wedge) = &self.cfg.nail_wedge {
                if wedge.contains(g.azimuth) {
                    continue;
                }
            }
            let delta = map.sample(g.x, g.y);
            let (gx, gy) = map.gradient(g.x, g.y);

            // Deformed surface z = dome_z - delta; inward (camera-facing)
            // normal of the graph.
            let nx = g.slope_x - gx;
            let ny = g.slope_y - gy;
            let nz = -1.0;
            let nlen = (nx * nx + ny * ny + 1.0).sqrt();
            let pz = g.z - delta;

            let mut rgb = [0.0f32; 3];
            for (channel, led) in self.leds.iter().enumerate() {
                let vx = led[0] - g.x;
                let vy = led[1] - g.y;
                let vz = led[2] - pz;
                let dist2 = vx * vx + vy * vy + vz * vz;
                let dist = dist2.sqrt();
                let lambert = ((nx * vx + ny * vy + nz * vz) / (nlen * dist)).max(0.0);
                let atten = self.cfg.led_ring_radius * self.cfg.led_ring_radius / dist2;
                let value = self.cfg.ambient + self.cfg.albedo * lambert * atten;
                rgb[channel] = value.clamp(0.0, 1.0) as f32;
            }
            pixels[idx] = rgb;
        }
        Ok(SensorFrame { width: n, height: n, pixels, timestamp_ms })
    }

    /// Frame of the unpressed gel.
    pub fn render_empty(&self, timestamp_ms: u64) -> SensorFrame {
        let map = HeightMap::flat(2, self.cfg.dome_extent);
        self.render(&map, timestamp_ms).expect("flat map is within bounds")
    }
}

/// Additive per-pixel Gaussian noise plus a global illumination drift,
/// seeded for reproducibility.
pub fn apply_sensor_noise(
    frame: &SensorFrame,
    sigma: f64,
    drift_span: f64,
    seed: u64,
) -> SensorFrame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drift = 1.0 + rng.random_range(-drift_span..=drift_span);
    let normal = Normal::new(0.0, sigma).expect("sigma is finite");
    let pixels = frame
        .pixels
        .iter()
        .map(|px| {
            px.map(|c| {
                let v = c as f64 * drift + normal.sample(&mut rng);
                v.clamp(0.0, 1.0) as f32
            })
        })
        .collect();
    SensorFrame { width: frame.width, height: frame.height, pixels, timestamp_ms: frame.timestamp_ms }
}

/// Reference frames for grasp detection plus the decision threshold.
#[derive(Debug, Clone)]
pub struct DetectorBaselines {
    pub baseline_empty: SensorFrame,
    pub baseline_object: SensorFrame,
    /// Score threshold in units of the empty-to-object baseline gap.
    pub threshold: f64,
    /// Per-pixel difference floor absorbing sensor noise and drift.
    pub noise_floor: f64,
    /// Region occluded by the mounted nail, excluded from scoring.
    pub wedge: Option<WedgeMask>,
    gap_excess: f64,
}

pub const DEFAULT_DETECT_THRESHOLD: f64 = 0.3;
pub const DEFAULT_NOISE_FLOOR: f64 = 0.04;

impl DetectorBaselines {
    pub fn new(
        baseline_empty: SensorFrame,
        baseline_object: SensorFrame,
        threshold: f64,
        noise_floor: f64,
        wedge: Option<WedgeMask>,
    ) -> Result<Self, SensorError> {
        if baseline_empty.width != baseline_object.width
            || baseline_empty.height != baseline_object.height
        {
            return Err(SensorError::DimensionMismatch {
                a: baseline_object.width,
                b: baseline_object.height,
                c: baseline_empty.width,
                d: baseline_empty.height,
            });
        }
        if !(threshold > 0.0) {
            return Err(SensorError::DegenerateBaselines("threshold must be positive"));
        }
        let gap_excess =
            excess_difference(&baseline_object, &baseline_empty, noise_floor, wedge.as_ref());
        if !(gap_excess > 0.0) {
            return Err(SensorError::DegenerateBaselines(
                "object baseline does not differ from empty baseline",
            ));
        }
        Ok(DetectorBaselines { baseline_empty, baseline_object, threshold, noise_floor, wedge, gap_excess })
    }
}

/// Mean noise-floored absolute difference between two frames, skipping the
/// occluded wedge.
fn excess_difference(
    frame: &SensorFrame,
    reference: &SensorFrame,
    floor: f64,
    wedge: Option<&WedgeMask>,
) -> f64 {
    let n = frame.width;
    let half = n as f64 / 2.0;
    let mut total = 0.0f64;
    let mut count = 0usize;
    for (idx, (a, b)) in frame.pixels.iter().zip(reference.pixels.iter()).enumerate() {
        if let Some(w) = wedge {
            let ix = (idx % n) as f64 + 0.5 - half;
            let iy = (idx / n) as f64 + 0.5 - half;
            if w.contains(iy.atan2(ix)) {
                continue;
            }
        }
        let diff = (a[0] as f64 - b[0] as f64).abs()
            + (a[1] as f64 - b[1] as f64).abs()
            + (a[2] as f64 - b[2] as f64).abs();
        total += (diff / 3.0 - floor).max(0.0);
        count += 1;
    }
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detection {
    pub detected: bool,
    pub score: f64,
}

/// Score a frame against the baselines: 0 at the empty press, 1 at the
/// object press, detected when the score clears the threshold.
pub fn detect_grasp(
    frame: &SensorFrame,
    baselines: &DetectorBaselines,
) -> Result<Detection, SensorError> {
    if frame.width != baselines.baseline_empty.width
        || frame.height != baselines.baseline_empty.height
    {
        return Err(SensorError::DimensionMismatch {
            a: frame.width,
            b: frame.height,
            c: baselines.baseline_empty.width,
            d: baselines.baseline_empty.height,
        });
    }
    let excess = excess_difference(
        frame,
        &baselines.baseline_empty,
        baselines.noise_floor,
        baselines.wedge.as_ref(),
    );
    let score = excess / baselines.gap_excess;
    Ok(Detection { detected: score > baselines.threshold, score })
}

/// Connected extent of pixels that differ from a reference beyond the
/// floor; used to size press blobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlobStats {
    pub changed_pixels: usize,
    pub bbox_width: usize,
    pub bbox_height: usize,
}

impl BlobStats {
    /// Blob diameter proxy: the larger bounding-box side.
    pub fn diameter(&self) -> usize {
        self.bbox_width.max(self.bbox_height)
    }
}

pub fn changed_pixel_stats(frame: &SensorFrame, reference: &SensorFrame, floor: f64) -> BlobStats {
    let n = frame.width;
    let mut min_x = usize::MAX;
    let mut max_x = 0usize;
    let mut min_y = usize::MAX;
    let mut max_y = 0usize;
    let mut changed = 0usize;
    for (idx, (a, b)) in frame.pixels.iter().zip(reference.pixels.iter()).enumerate() {
        let diff = (a[0] as f64 - b[0] as f64).abs()
            + (a[1] as f64 - b[1] as f64).abs()
            + (a[2] as f64 - b[2] as f64).abs();
        if diff / 3.0 > floor {
            let x = idx % n;
            let y = idx / n;
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
            changed += 1;
        }
    }
    if changed == 0 {
        BlobStats { changed_pixels: 0, bbox_width: 0, bbox_height: 0 }
    } else {
        BlobStats {
            changed_pixels: changed,
            bbox_width: max_x - min_x + 1,
            bbox_height: max_y - min_y + 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn renderer() -> Renderer {
        Renderer::new(RenderConfig::default(), &GelSpec::default())
    }

    fn centered_press(half_length: f64, half_width: f64, depth: f64) -> PressFootprint {
        PressFootprint {
            center: Vec2::ZERO,
            half_length,
            half_width,
            rotation: 0.0,
            depth,
            spread_sigma: 0.3e-3,
        }
    }

    #[test]
    fn zero_deformation_matches_cached_reference_exactly() {
        let r = renderer();
        let reference = r.render_empty(0);
        let map = HeightMap::flat(64, r.config().dome_extent);
        let frame = r.render(&map, 0).unwrap();
        assert_eq!(frame, reference);
    }

    #[test]
    fn deformation_bound_is_enforced() {
        let r = renderer();
        let map = HeightMap::from_fn(32, 9e-3, |_, _| 4e-3);
        assert!(matches!(r.render(&map, 0), Err(SensorError::DeformationBound { .. })));
    }

    #[test]
    fn press_blob_is_contiguous_and_sized() {
        let r = renderer();
        let empty = r.render_empty(0);
        // A seed-scale press (about 1.2 x 2 mm footprint), centered.
        let map = centered_press(1.0e-3, 0.6e-3, 0.5e-3).height_map(181, 9e-3);
        let frame = r.render(&map, 0).unwrap();
        let stats = changed_pixel_stats(&frame, &empty, DEFAULT_NOISE_FLOOR);
        assert!(stats.changed_pixels > 0);
        let d = stats.diameter();
        assert!((40..=60).contains(&d), "blob diameter {d} outside 40..=60");
    }

    #[test]
    fn rotating_the_press_by_led_spacing_permutes_channels() {
        let r = renderer();
        let empty = r.render_empty(0);
        let base = PressFootprint {
            center: Vec2::new(3.0e-3, 0.0),
            half_length: 0.8e-3,
            half_width: 0.5e-3,
            rotation: 0.0,
            depth: 0.5e-3,
            spread_sigma: 0.3e-3,
        };
        let rot = 120f64.to_radians();
        let rotated = PressFootprint {
            center: base.center.rotated(rot),
            rotation: base.rotation + rot,
            ..base
        };

        let channel_sums = |press: &PressFootprint| -> [f64; 3] {
            let frame = r.render(&press.height_map(181, 9e-3), 0).unwrap();
            let mut sums = [0.0f64; 3];
            for (a, b) in frame.pixels.iter().zip(empty.pixels.iter()) {
                for c in 0..3 {
                    sums[c] += a[c] as f64 - b[c] as f64;
                }
            }
            sums
        };

        let s0 = channel_sums(&base);
        let s1 = channel_sums(&rotated);
        // LED azimuths are 0/120/240: rotating the press forward by one LED
        // spacing shifts each channel's response to the next channel.
        let total: f64 = s0.iter().map(|v| v.abs()).sum();
        assert!(total > 0.0);
        for c in 0..3 {
            let expected = s0[c];
            let actual = s1[(c + 1) % 3];
            assert!(
                (expected - actual).abs() <= 0.02 * total,
                "channel {c}: {expected} vs {actual}"
            );
        }
    }

    #[test]
    fn detector_anchors_at_zero_and_one() {
        let r = renderer();
        let empty = r.render_empty(0);
        let object_map = centered_press(1.0e-3, 0.6e-3, 0.5e-3).height_map(181, 9e-3);
        let object = r.render(&object_map, 0).unwrap();
        let baselines = DetectorBaselines::new(
            empty.clone(),
            object.clone(),
            DEFAULT_DETECT_THRESHOLD,
            DEFAULT_NOISE_FLOOR,
            None,
        )
        .unwrap();

        let at_empty = detect_grasp(&empty, &baselines).unwrap();
        assert_eq!(at_empty.score, 0.0);
        assert!(!at_empty.detected);

        let at_object = detect_grasp(&object, &baselines).unwrap();
        assert!((at_object.score - 1.0).abs() < 1e-12);
        assert!(at_object.detected);
    }

    #[test]
    fn noisy_empty_press_stays_below_threshold() {
        let r = renderer();
        let empty = r.render_empty(0);
        let object_map = centered_press(1.0e-3, 0.6e-3, 0.5e-3).height_map(181, 9e-3);
        let object = r.render(&object_map, 0).unwrap();
        let baselines =
            DetectorBaselines::new(empty.clone(), object, 0.3, DEFAULT_NOISE_FLOOR, None).unwrap();

        for seed in 0..20 {
            let noisy = apply_sensor_noise(&empty, 0.01, 0.02, seed);
            let det = detect_grasp(&noisy, &baselines).unwrap();
            assert!(!det.detected, "seed {seed} scored {}", det.score);
        }
    }

    #[test]
    fn noisy_object_press_is_detected() {
        let r = renderer();
        let empty = r.render_empty(0);
        let object_map = centered_press(1.0e-3, 0.6e-3, 0.5e-3).height_map(181, 9e-3);
        let object = r.render(&object_map, 0).unwrap();
        let baselines =
            DetectorBaselines::new(empty, object.clone(), 0.3, DEFAULT_NOISE_FLOOR, None).unwrap();

        for seed in 0..20 {
            let noisy = apply_sensor_noise(&object, 0.01, 0.02, seed);
            let det = detect_grasp(&noisy, &baselines).unwrap();
            assert!(det.detected, "seed {seed} scored {}", det.score);
        }
    }

    #[test]
    fn score_monotone_in_footprint() {
        let r = renderer();
        let empty = r.render_empty(0);
        let object_map = centered_press(1.0e-3, 0.6e-3, 0.5e-3).height_map(181, 9e-3);
        let object = r.render(&object_map, 0).unwrap();
        let baselines =
            DetectorBaselines::new(empty, object, 0.3, DEFAULT_NOISE_FLOOR, None).unwrap();

        let mut last = 0.0;
        for scale in [0.5, 1.0, 1.6, 2.4] {
            let map = centered_press(1.0e-3 * scale, 0.6e-3 * scale, 0.5e-3)
                .height_map(181, 9e-3);
            let frame = r.render(&map, 0).unwrap();
            let det = detect_grasp(&frame, &baselines).unwrap();
            assert!(det.score >= last, "score must grow with footprint");
            last = det.score;
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let r = renderer();
        let empty = r.render_empty(0);
        let small = Renderer::new(
            RenderConfig { frame_size: 64, ..RenderConfig::default() },
            &GelSpec::default(),
        );
        let frame = small.render_empty(0);
        let object_map = centered_press(1.0e-3, 0.6e-3, 0.5e-3).height_map(64, 9e-3);
        let object = r.render(&object_map, 0).unwrap();
        let baselines =
            DetectorBaselines::new(empty, object, 0.3, DEFAULT_NOISE_FLOOR, None).unwrap();
        assert!(matches!(
            detect_grasp(&frame, &baselines),
            Err(SensorError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nail_wedge_masks_pixels_and_detector_ignores_them() {
        let gel = GelSpec::default();
        let wedge = WedgeMask { azimuth_deg: 0.0, width_deg: 10.4 };
        let cfg = RenderConfig { nail_wedge: Some(wedge), ..RenderConfig::default() };
        let r = Renderer::new(cfg, &gel);
        let empty = r.render_empty(0);

        // The wedge region renders black.
        let n = empty.width;
        let px = empty.pixels[(n / 2) * n + (n - 10)];
        assert_eq!(px, [0.0, 0.0, 0.0]);

        let object_map = centered_press(1.0e-3, 0.6e-3, 0.5e-3).height_map(181, 9e-3);
        let object = r.render(&object_map, 0).unwrap();
        let baselines =
            DetectorBaselines::new(empty, object.clone(), 0.3, DEFAULT_NOISE_FLOOR, Some(wedge))
                .unwrap();
        let det = detect_grasp(&object, &baselines).unwrap();
        assert!(det.detected);
    }

    #[test]
    fn ppm_round_trip() {
        let r = Renderer::new(
            RenderConfig { frame_size: 48, ..RenderConfig::default() },
            &GelSpec::default(),
        );
        let frame = r.render_empty(0);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("frame.ppm");
        frame.save_ppm(&path).unwrap();
        let loaded = SensorFrame::load_ppm(&path).unwrap();
        assert_eq!(loaded.width, frame.width);
        assert_eq!(loaded.height, frame.height);
        for (a, b) in frame.pixels.iter().zip(loaded.pixels.iter()) {
            for c in 0..3 {
                assert!((a[c] - b[c]).abs() <= 0.5 / 255.0 + 1e-6);
            }
        }
    }

    #[test]
    fn height_map_text_round_trip() {
        let map = centered_press(1.0e-3, 0.6e-3, 0.4e-3).height_map(33, 9e-3);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("map.txt");
        map.save_text(&path).unwrap();
        let loaded = HeightMap::load_text(&path, 9e-3).unwrap();
        assert_eq!(map.size(), loaded.size());
        for (a, b) in map.data.iter().zip(loaded.data.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
