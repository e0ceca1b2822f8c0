//! Scan rasterization: quantizing polar returns into the 64×360 binary
//! raster and padding it to 64×384.
//!
//! The angle bin is the bearing rounded to the nearest degree (half away
//! from zero) wrapped modulo 360; the range bin is
//! `floor(clip(rho * 63 / r_max, 0, 63))`. Invalid returns (infinite, or
//! outside the 0.12–3.5 m measurement window) are first replaced with the
//! sentinel `r_max`, which lands them in the far range bin. Padding appends
//! 24 zero columns on the right so column index stays equal to angle bin.

use serde::{Deserialize, Serialize};

use crate::types::{EncodingConfig, PolarScan};
use crate::{Error, Result};

/// A binary image of one scan: rows are range bins, columns are angle bins,
/// pixel values are exactly 0 or 255.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Raster {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Raster {
    /// All-zero raster of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.cols + col]
    }

    /// Sets the pixel at (row, col) to 255. Idempotent.
    pub fn set(&mut self, row: usize, col: usize) {
        self.data[row * self.cols + col] = 255;
    }

    /// Row-major pixel bytes.
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    /// Number of set pixels.
    pub fn popcount(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    /// Writes the raster as an 8-bit grayscale PNG; row 0 (range bin 0) is
    /// the top image row.
    pub fn write_png(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let img = image::GrayImage::from_raw(self.cols as u32, self.rows as u32, self.data.clone())
            .expect("buffer matches dimensions");
        img.save(path.as_ref())?;
        Ok(())
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }
}

/// Replaces invalid returns with the sentinel `r_max`.
///
/// A return is valid iff `sensor_min <= rho <= sensor_max`; anything else
/// (too close, too far, infinite, NaN) becomes `cfg.r_max`. Total function.
pub fn sanitize_range(rho: f64, cfg: &EncodingConfig) -> f64 {
    if rho >= cfg.sensor_min && rho <= cfg.sensor_max {
        rho
    } else {
        cfg.r_max
    }
}

/// Angle bin for a bearing in degrees: round half away from zero, wrap
/// modulo 360.
pub fn angle_bin(theta_deg: f64) -> Result<usize> {
    if !theta_deg.is_finite() {
        return Err(Error::invalid(format!("non-finite bearing {theta_deg}")));
    }
    let rounded = theta_deg.round() as i64;
    Ok(rounded.rem_euclid(360) as usize)
}

/// Range bin for a sanitized range: `floor(clip(rho * 63 / r_max, 0, 63))`.
pub fn range_bin(rho: f64, cfg: &EncodingConfig) -> Result<usize> {
    if !rho.is_finite() || rho < 0.0 {
        return Err(Error::invalid(format!("bad range {rho} (sanitize first)")));
    }
    let top = (cfg.range_bins - 1) as f64;
    let scaled = (rho * top / cfg.r_max).clamp(0.0, top);
    Ok(scaled.floor() as usize)
}

/// Rasterizes one scan into a 64×360 binary raster.
///
/// For every return, the pixel at `(range_bin(sanitize(rho)), angle_bin(theta))`
/// is set to 255; everything else stays 0.
pub fn rasterize_scan(scan: &PolarScan, cfg: &EncodingConfig) -> Result<Raster> {
    if scan.ranges().len() != cfg.angle_bins {
        return Err(Error::invalid(format!(
            "scan has {} returns, expected {}",
            scan.ranges().len(),
            cfg.angle_bins
        )));
    }
    let mut out = Raster::zeros(cfg.range_bins, cfg.angle_bins);
    for (bearing, rho) in scan.returns() {
        let col = angle_bin(bearing)?;
        let row = range_bin(sanitize_range(rho, cfg), cfg)?;
        out.set(row, col);
    }
    Ok(out)
}

/// Pads a 64×360 raster with 24 zero columns on the right, yielding 64×384.
///
/// The left 360 columns are copied bit-identically; the raster is never
/// rescaled, which would distort the angular structure.
pub fn pad_raster(r: &Raster, cfg: &EncodingConfig) -> Result<Raster> {
    if r.rows() != cfg.range_bins || r.cols() != cfg.angle_bins {
        return Err(Error::invalid(format!(
            "expected {}x{} raster, got {}x{}",
            cfg.range_bins,
            cfg.angle_bins,
            r.rows(),
            r.cols()
        )));
    }
    let cols = cfg.padded_cols();
    let mut data = vec![0u8; cfg.range_bins * cols];
    for row in 0..cfg.range_bins {
        let src = &r.data()[row * cfg.angle_bins..(row + 1) * cfg.angle_bins];
        data[row * cols..row * cols + cfg.angle_bins].copy_from_slice(src);
    }
    Ok(Raster::from_parts(cfg.range_bins, cols, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Pose2D;
    use rand::{Rng, SeedableRng};

    fn cfg() -> EncodingConfig {
        EncodingConfig::default()
    }

    #[test]
    fn sanitize_examples() {
        let c = cfg();
        assert_eq!(sanitize_range(f64::INFINITY, &c), 4.0);
        assert_eq!(sanitize_range(1.0, &c), 1.0);
        assert_eq!(sanitize_range(0.05, &c), 4.0);
        assert_eq!(sanitize_range(3.6, &c), 4.0);
        assert_eq!(sanitize_range(f64::NAN, &c), 4.0);
        assert_eq!(sanitize_range(0.12, &c), 0.12);
        assert_eq!(sanitize_range(3.5, &c), 3.5);
    }

    #[test]
    fn angle_bin_examples() {
        assert_eq!(angle_bin(0.0).unwrap(), 0);
        assert_eq!(angle_bin(359.6).unwrap(), 0);
        assert_eq!(angle_bin(123.4).unwrap(), 123);
        assert_eq!(angle_bin(-0.4).unwrap(), 0);
        assert_eq!(angle_bin(-0.6).unwrap(), 359);
        // Half away from zero.
        assert_eq!(angle_bin(10.5).unwrap(), 11);
        assert!(angle_bin(f64::NAN).is_err());
    }

    #[test]
    fn range_bin_examples() {
        let c = cfg();
        assert_eq!(range_bin(0.0, &c).unwrap(), 0);
        assert_eq!(range_bin(4.0, &c).unwrap(), 63);
        assert_eq!(range_bin(2.0, &c).unwrap(), 31);
        assert_eq!(range_bin(10.0, &c).unwrap(), 63);
        assert!(range_bin(-0.1, &c).is_err());
        assert!(range_bin(f64::INFINITY, &c).is_err());
    }

    #[test]
    fn range_bin_is_monotone() {
        let c = cfg();
        let mut prev = 0;
        for i in 0..=4000 {
            let rho = i as f64 * 0.001;
            let b = range_bin(rho, &c).unwrap();
            assert!(b >= prev, "rho={rho}");
            prev = b;
        }
        assert_eq!(prev, 63);
    }

    // Independent brute-force evaluation of the two bin formulas, written
    // without reusing the implementation's rounding helpers.
    fn oracle_angle_bin(theta: f64) -> usize {
        let r = if theta >= 0.0 {
            (theta + 0.5).floor()
        } else {
            (theta - 0.5).ceil()
        };
        let mut m = (r as i64) % 360;
        if m < 0 {
            m += 360;
        }
        m as usize
    }

    fn oracle_range_bin(rho: f64) -> usize {
        let mut v = rho * 63.0 / 4.0;
        if v < 0.0 {
            v = 0.0;
        }
        if v > 63.0 {
            v = 63.0;
        }
        v.floor() as usize
    }

    #[test]
    fn bins_match_brute_force() {
        let c = cfg();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20_000 {
            let theta: f64 = rng.gen_range(-720.0..1080.0);
            let rho: f64 = rng.gen_range(0.0..6.0);
            assert_eq!(angle_bin(theta).unwrap(), oracle_angle_bin(theta), "theta={theta}");
            assert_eq!(range_bin(rho, &c).unwrap(), oracle_range_bin(rho), "rho={rho}");
        }
    }

    #[test]
    fn rasterize_all_infinite_fills_far_row() {
        let c = cfg();
        let pose = Pose2D::new(0.0, 0.0, 0.0).unwrap();
        let scan = PolarScan::new(vec![f64::INFINITY; 360], pose, 0).unwrap();
        let r = rasterize_scan(&scan, &c).unwrap();
        for col in 0..360 {
            assert_eq!(r.get(63, col), 255);
        }
        for row in 0..63 {
            for col in 0..360 {
                assert_eq!(r.get(row, col), 0);
            }
        }
    }

    #[test]
    fn rasterize_single_return() {
        let c = cfg();
        let pose = Pose2D::new(0.0, 0.0, 0.0).unwrap();
        let mut ranges = vec![f64::INFINITY; 360];
        ranges[0] = 2.0;
        let scan = PolarScan::new(ranges, pose, 0).unwrap();
        let r = rasterize_scan(&scan, &c).unwrap();
        assert_eq!(r.get(31, 0), 255);
        assert_eq!(r.get(63, 0), 0);
        for col in 1..360 {
            assert_eq!(r.get(63, col), 255);
        }
        assert_eq!(r.popcount(), 360);
    }

    #[test]
    fn rasterize_popcount_counts_distinct_bins() {
        let c = cfg();
        let pose = Pose2D::new(0.0, 0.0, 0.0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let ranges: Vec<f64> = (0..360)
                .map(|_| {
                    if rng.gen_bool(0.2) {
                        f64::INFINITY
                    } else {
                        rng.gen_range(0.0..4.5)
                    }
                })
                .collect();
            let scan = PolarScan::new(ranges, pose, 0).unwrap();
            let r = rasterize_scan(&scan, &c).unwrap();
            let distinct: std::collections::BTreeSet<(usize, usize)> = scan
                .returns()
                .map(|(b, rho)| {
                    (
                        range_bin(sanitize_range(rho, &c), &c).unwrap(),
                        angle_bin(b).unwrap(),
                    )
                })
                .collect();
            assert_eq!(r.popcount(), distinct.len());
            assert!(r.popcount() <= 360);
        }
    }

    #[test]
    fn pad_keeps_data_and_appends_zeros() {
        let c = cfg();
        let mut r = Raster::zeros(64, 360);
        r.set(5, 359);
        r.set(0, 0);
        let p = pad_raster(&r, &c).unwrap();
        assert_eq!(p.rows(), 64);
        assert_eq!(p.cols(), 384);
        assert_eq!(p.get(5, 359), 255);
        assert_eq!(p.get(5, 360), 0);
        assert_eq!(p.get(0, 0), 255);
        // Left 360 columns bit-identical.
        for row in 0..64 {
            for col in 0..360 {
                assert_eq!(p.get(row, col), r.get(row, col));
            }
            for col in 360..384 {
                assert_eq!(p.get(row, col), 0);
            }
        }
        // Wrong shape rejected.
        assert!(pad_raster(&p, &c).is_err());
        let zero = Raster::zeros(64, 360);
        let pz = pad_raster(&zero, &c).unwrap();
        assert_eq!(pz.popcount(), 0);
    }
}
