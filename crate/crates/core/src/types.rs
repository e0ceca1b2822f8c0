//! Shared geometry and identity types: angles, poses, object classes, polar
//! scans, and the global encoding constants.
//!
//! Conventions fixed here and used identically by the simulator, the
//! rasterizer and the labeler:
//!
//! * angles are degrees everywhere; yaw and bearings live in `[0, 360)`;
//! * bearing 0° is the robot heading and bearings increase counter-clockwise;
//! * the sensor sits at the robot origin.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Number of range bins (raster rows).
pub const RANGE_BINS: usize = 64;
/// Number of angle bins (raster data columns), one per degree.
pub const ANGLE_BINS: usize = 360;
/// Zero columns appended so the padded width is divisible by 32.
pub const PAD_COLS: usize = 24;
/// Padded raster width.
pub const PADDED_COLS: usize = ANGLE_BINS + PAD_COLS;

/// Global encoding constants shared by every stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodingConfig {
    /// Raster rows (range axis). Fixed at 64.
    pub range_bins: usize,
    /// Raster data columns (angle axis), one per degree. Fixed at 360.
    pub angle_bins: usize,
    /// Zero columns appended on the right of the data columns.
    pub pad_cols: usize,
    /// Full-scale range in meters; also the sentinel substituted for
    /// invalid returns.
    pub r_max: f64,
    /// Lower edge of the valid measurement window, meters.
    pub sensor_min: f64,
    /// Upper edge of the valid measurement window, meters.
    pub sensor_max: f64,
    /// Scan rate in Hz.
    pub scan_rate_hz: f64,
}

impl Default for EncodingConfig {
    fn default() -> Self {
        Self {
            range_bins: RANGE_BINS,
            angle_bins: ANGLE_BINS,
            pad_cols: PAD_COLS,
            r_max: 4.0,
            sensor_min: 0.12,
            sensor_max: 3.5,
            scan_rate_hz: 10.0,
        }
    }
}

impl EncodingConfig {
    /// Checks the structural invariants of the encoding.
    pub fn validate(&self) -> Result<()> {
        if self.range_bins != RANGE_BINS {
            return Err(Error::invalid(format!(
                "range_bins must be {RANGE_BINS}, got {}",
                self.range_bins
            )));
        }
        if self.angle_bins != ANGLE_BINS {
            return Err(Error::invalid(format!(
                "angle_bins must be {ANGLE_BINS}, got {}",
                self.angle_bins
            )));
        }
        if (self.angle_bins + self.pad_cols) % 32 != 0 {
            return Err(Error::invalid(format!(
                "angle_bins + pad_cols = {} is not divisible by 32",
                self.angle_bins + self.pad_cols
            )));
        }
        if !(0.0 < self.sensor_min && self.sensor_min < self.sensor_max && self.sensor_max < self.r_max)
        {
            return Err(Error::invalid(format!(
                "need 0 < sensor_min < sensor_max < r_max, got {} / {} / {}",
                self.sensor_min, self.sensor_max, self.r_max
            )));
        }
        if !(self.scan_rate_hz.is_finite() && self.scan_rate_hz > 0.0) {
            return Err(Error::invalid("scan_rate_hz must be positive"));
        }
        Ok(())
    }

    /// Padded raster width in columns.
    pub fn padded_cols(&self) -> usize {
        self.angle_bins + self.pad_cols
    }

    /// Seconds between consecutive scans.
    pub fn frame_period_s(&self) -> f64 {
        1.0 / self.scan_rate_hz
    }
}

/// A 2D point in world coordinates, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        self.sub(o).norm()
    }

    /// Rotates counter-clockwise by `deg` degrees about the origin.
    pub fn rotate_deg(self, deg: f64) -> Point2 {
        let (s, c) = deg.to_radians().sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

/// Planar robot pose: position in meters, yaw in degrees within `[0, 360)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose2D {
    pub x: f64,
    pub y: f64,
    pub yaw_deg: f64,
}

impl Pose2D {
    /// Builds a pose, normalizing yaw into `[0, 360)`.
    pub fn new(x: f64, y: f64, yaw_deg: f64) -> Result<Self> {
        Ok(Self {
            x,
            y,
            yaw_deg: normalize_angle_deg(yaw_deg)?,
        })
    }

    pub fn position(&self) -> Point2 {
        Point2::new(self.x, self.y)
    }
}

/// The four object classes with their stable integer ids:
/// chair=0, box=1, desk=2, doorframe=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectClass {
    Chair,
    Box,
    Desk,
    Doorframe,
}

impl ObjectClass {
    /// All classes in id order.
    pub const ALL: [ObjectClass; 4] = [
        ObjectClass::Chair,
        ObjectClass::Box,
        ObjectClass::Desk,
        ObjectClass::Doorframe,
    ];

    /// Number of classes.
    pub const COUNT: usize = 4;

    pub fn id(self) -> usize {
        match self {
            ObjectClass::Chair => 0,
            ObjectClass::Box => 1,
            ObjectClass::Desk => 2,
            ObjectClass::Doorframe => 3,
        }
    }

    pub fn from_id(id: usize) -> Result<Self> {
        Self::ALL
            .get(id)
            .copied()
            .ok_or_else(|| Error::invalid(format!("unknown class id {id}")))
    }

    pub fn name(self) -> &'static str {
        match self {
            ObjectClass::Chair => "chair",
            ObjectClass::Box => "box",
            ObjectClass::Desk => "desk",
            ObjectClass::Doorframe => "doorframe",
        }
    }
}

impl std::fmt::Display for ObjectClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One full 360° sweep: a range per integer bearing, plus the robot pose and
/// frame index at capture time.
///
/// Bearing `i` (degrees) maps to `ranges[i]`; invalid returns are stored as
/// `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarScan {
    ranges: Vec<f64>,
    pub pose: Pose2D,
    /// Frame index within its episode/stream.
    pub t: usize,
}

impl PolarScan {
    /// Builds a scan from 360 ranges ordered by bearing (one per degree,
    /// starting at 0°).
    pub fn new(ranges: Vec<f64>, pose: Pose2D, t: usize) -> Result<Self> {
        if ranges.len() != ANGLE_BINS {
            return Err(Error::invalid(format!(
                "scan must have {ANGLE_BINS} returns, got {}",
                ranges.len()
            )));
        }
        if let Some(r) = ranges.iter().find(|r| r.is_nan() || **r < 0.0) {
            return Err(Error::invalid(format!("bad range value {r}")));
        }
        Ok(Self { ranges, pose, t })
    }

    pub fn ranges(&self) -> &[f64] {
        &self.ranges
    }

    /// Ordered (bearing°, range) pairs.
    pub fn returns(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.ranges.iter().enumerate().map(|(i, &r)| (i as f64, r))
    }
}

/// Normalizes an angle in degrees into `[0, 360)`.
pub fn normalize_angle_deg(a: f64) -> Result<f64> {
    if !a.is_finite() {
        return Err(Error::invalid(format!("non-finite angle {a}")));
    }
    let mut r = a.rem_euclid(360.0);
    // rem_euclid can round up to exactly 360.0 for tiny negative inputs.
    if r >= 360.0 {
        r = 0.0;
    }
    Ok(r)
}

/// Expresses a world point in the robot frame as (bearing°, range m).
///
/// Bearing 0° is the robot heading, increasing counter-clockwise. A point
/// coincident with the robot origin yields (0°, 0.0).
pub fn world_to_robot_frame(p: Point2, pose: &Pose2D) -> (f64, f64) {
    let d = p.sub(pose.position());
    let range = d.norm();
    if range == 0.0 {
        return (0.0, 0.0);
    }
    let world_deg = d.y.atan2(d.x).to_degrees();
    let bearing = normalize_angle_deg(world_deg - pose.yaw_deg)
        .expect("finite by construction");
    (bearing, range)
}

/// Inverse of [`world_to_robot_frame`]: maps (bearing°, range) back to a
/// world point.
pub fn robot_to_world_frame(bearing_deg: f64, range: f64, pose: &Pose2D) -> Point2 {
    let world_deg = pose.yaw_deg + bearing_deg;
    let (s, c) = world_deg.to_radians().sin_cos();
    Point2::new(pose.x + range * c, pose.y + range * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_angle_deg(0.0).unwrap(), 0.0);
        assert_eq!(normalize_angle_deg(450.0).unwrap(), 90.0);
        assert_eq!(normalize_angle_deg(-90.0).unwrap(), 270.0);
        assert!(normalize_angle_deg(f64::NAN).is_err());
        assert!(normalize_angle_deg(f64::INFINITY).is_err());
    }

    #[test]
    fn normalize_is_idempotent_and_in_range() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let a: f64 = rng.gen_range(-1e6..1e6);
            let n = normalize_angle_deg(a).unwrap();
            assert!((0.0..360.0).contains(&n), "{a} -> {n}");
            assert_eq!(normalize_angle_deg(n).unwrap(), n);
        }
        // Tiny negative values must not round up to 360.
        let n = normalize_angle_deg(-1e-16).unwrap();
        assert!((0.0..360.0).contains(&n));
    }

    #[test]
    fn robot_frame_examples() {
        let origin = Pose2D::new(0.0, 0.0, 0.0).unwrap();
        let (b, r) = world_to_robot_frame(Point2::new(1.0, 0.0), &origin);
        assert!((b - 0.0).abs() < 1e-12 && (r - 1.0).abs() < 1e-12);

        let (b, r) = world_to_robot_frame(Point2::new(0.0, 1.0), &origin);
        assert!((b - 90.0).abs() < 1e-12 && (r - 1.0).abs() < 1e-12);

        let turned = Pose2D::new(0.0, 0.0, 90.0).unwrap();
        let (b, r) = world_to_robot_frame(Point2::new(1.0, 0.0), &turned);
        assert!((b - 270.0).abs() < 1e-12 && (r - 1.0).abs() < 1e-12);

        // Coincident point.
        let (b, r) = world_to_robot_frame(Point2::new(0.0, 0.0), &origin);
        assert_eq!((b, r), (0.0, 0.0));
    }

    #[test]
    fn robot_frame_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let pose = Pose2D::new(
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(0.0..360.0),
            )
            .unwrap();
            let p = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let (bearing, range) = world_to_robot_frame(p, &pose);
            let back = robot_to_world_frame(bearing, range, &pose);
            assert!(back.dist(p) < 1e-9, "{p:?} -> {back:?}");
        }
    }

    #[test]
    fn class_ids_are_stable() {
        assert_eq!(ObjectClass::Chair.id(), 0);
        assert_eq!(ObjectClass::Box.id(), 1);
        assert_eq!(ObjectClass::Desk.id(), 2);
        assert_eq!(ObjectClass::Doorframe.id(), 3);
        for c in ObjectClass::ALL {
            assert_eq!(ObjectClass::from_id(c.id()).unwrap(), c);
        }
        assert!(ObjectClass::from_id(4).is_err());
    }

    #[test]
    fn scan_requires_360_returns() {
        let pose = Pose2D::new(0.0, 0.0, 0.0).unwrap();
        assert!(PolarScan::new(vec![1.0; 359], pose, 0).is_err());
        let scan = PolarScan::new(vec![f64::INFINITY; 360], pose, 0).unwrap();
        assert_eq!(scan.returns().count(), 360);
        let (b0, _) = scan.returns().next().unwrap();
        assert_eq!(b0, 0.0);
    }

    #[test]
    fn config_validation() {
        assert!(EncodingConfig::default().validate().is_ok());
        let mut c = EncodingConfig::default();
        c.pad_cols = 23;
        assert!(c.validate().is_err());
        let mut c = EncodingConfig::default();
        c.sensor_min = 0.0;
        assert!(c.validate().is_err());
        let mut c = EncodingConfig::default();
        c.sensor_max = 4.5;
        assert!(c.validate().is_err());
    }
}
