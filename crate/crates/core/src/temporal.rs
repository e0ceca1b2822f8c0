//! Temporal encoding: the 3-frame FIFO, RGB stacking, and the explored
//! 5-frame aligned-fused variant.
//!
//! The main path stacks the padded rasters at t−2, t−1 and t into the red,
//! green and blue channels of one 64×384×3 tensor, copying bytes per pixel
//! with no alignment or rescaling. The aligned-fused encoder yaw-shifts a
//! 5-frame buffer to the newest heading and fills the channels with hit
//! counts, Sobel edges and local point density; it exists for ablation runs
//! only.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::raster::Raster;
use crate::types::{Pose2D, ANGLE_BINS, PADDED_COLS, RANGE_BINS};
use crate::{Error, Result};

/// FIFO of the most recent padded rasters and the poses they were captured
/// at, oldest first.
#[derive(Debug, Clone)]
pub struct FrameBuffer {
    frames: VecDeque<(Raster, Pose2D)>,
    capacity: usize,
}

impl FrameBuffer {
    /// Buffer for the main 3-frame encoding.
    pub fn new() -> Self {
        Self::with_capacity(3)
    }

    /// Buffer with an explicit capacity (3 main path, 5 ablation).
    pub fn with_capacity(capacity: usize) -> Self {
        assert!(capacity >= 1);
        Self {
            frames: VecDeque::with_capacity(capacity),
            capacity,
        }
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn is_full(&self) -> bool {
        self.frames.len() == self.capacity
    }

    /// Frame `i` counting from the oldest.
    pub fn frame(&self, i: usize) -> Option<&(Raster, Pose2D)> {
        self.frames.get(i)
    }

    /// Appends the newest frame, evicting the oldest once over capacity.
    pub fn push(&mut self, raster: Raster, pose: Pose2D) -> Result<()> {
        if raster.rows() != RANGE_BINS || raster.cols() != PADDED_COLS {
            return Err(Error::invalid(format!(
                "frame buffer expects {}x{} padded rasters, got {}x{}",
                RANGE_BINS,
                PADDED_COLS,
                raster.rows(),
                raster.cols()
            )));
        }
        if self.frames.len() == self.capacity {
            self.frames.pop_front();
        }
        self.frames.push_back((raster, pose));
        Ok(())
    }
}

impl Default for FrameBuffer {
    fn default() -> Self {
        Self::new()
    }
}

/// The 64×384×3 network input. Channel 0 holds the oldest frame (t−2),
/// channel 2 the newest (t).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RgbTensor {
    rows: usize,
    cols: usize,
    /// Row-major, channel-interleaved: `[r, g, b]` per pixel.
    data: Vec<u8>,
}

impl RgbTensor {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols * 3],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> [u8; 3] {
        let i = (row * self.cols + col) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn set(&mut self, row: usize, col: usize, px: [u8; 3]) {
        let i = (row * self.cols + col) * 3;
        self.data[i..i + 3].copy_from_slice(&px);
    }

    /// Extracts channel `c` (0 = oldest) as a raster-shaped plane.
    pub fn channel(&self, c: usize) -> Raster {
        assert!(c < 3);
        let plane: Vec<u8> = self.data.iter().skip(c).step_by(3).copied().collect();
        Raster::from_parts(self.rows, self.cols, plane)
    }

    /// Raw byte dump for backend adapters: row-major, channel-interleaved
    /// `[t-2, t-1, t]` bytes per pixel, rows top to bottom. Single bytes, so
    /// the layout is endianness-free; multi-byte consumers should treat the
    /// stream as little-endian u8 triples.
    pub fn to_bytes(&self) -> &[u8] {
        &self.data
    }

    /// Writes the tensor as a 24-bit RGB PNG (red = t−2, green = t−1,
    /// blue = t).
    pub fn write_png(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let img = image::RgbImage::from_raw(self.cols as u32, self.rows as u32, self.data.clone())
            .expect("buffer matches dimensions");
        img.save(path.as_ref())?;
        Ok(())
    }

    /// Reads a tensor back from a 24-bit RGB PNG.
    pub fn read_png(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let img = image::open(path.as_ref())?.to_rgb8();
        Ok(Self {
            rows: img.height() as usize,
            cols: img.width() as usize,
            data: img.into_raw(),
        })
    }
}

/// Stacks a full 3-frame buffer into the RGB tensor: channel 0 = oldest,
/// channel 2 = newest, per-pixel byte copy.
pub fn stack_rgb(buf: &FrameBuffer) -> Result<RgbTensor> {
    if buf.len() != 3 {
        return Err(Error::NotReady(format!(
            "need 3 buffered frames to stack, have {}",
            buf.len()
        )));
    }
    let (first, _) = buf.frame(0).unwrap();
    let rows = first.rows();
    let cols = first.cols();
    let mut out = RgbTensor::zeros(rows, cols);
    for c in 0..3 {
        let (frame, _) = buf.frame(c).unwrap();
        let src = frame.data();
        for (i, &v) in src.iter().enumerate() {
            out.data[i * 3 + c] = v;
        }
    }
    Ok(out)
}

/// Circularly rotates the 360 data columns by `round(dyaw)` positions
/// (column `c` moves to `(c + round(dyaw)) mod 360`); padding columns are
/// untouched.
pub fn yaw_shift(r: &Raster, dyaw_deg: f64) -> Raster {
    let data_cols = ANGLE_BINS.min(r.cols());
    let shift = (dyaw_deg.round() as i64).rem_euclid(data_cols as i64) as usize;
    if shift == 0 {
        return r.clone();
    }
    let (rows, cols) = (r.rows(), r.cols());
    let mut data = vec![0u8; rows * cols];
    for row in 0..rows {
        let base = row * cols;
        for col in 0..data_cols {
            data[base + (col + shift) % data_cols] = r.get(row, col);
        }
        for col in data_cols..cols {
            data[base + col] = r.get(row, col);
        }
    }
    Raster::from_parts(rows, cols, data)
}

/// Fuses 5 frames into the ablation tensor.
///
/// Every raster is yaw-shifted to the newest frame's heading, then:
/// channel 0 = per-pixel hit count scaled by 255/5; channel 1 = Sobel
/// gradient magnitude of channel 0 (replicate border), clipped to 255;
/// channel 2 = 3×3 box density of the newest aligned raster scaled so a
/// full window maps to 255.
pub fn encode_aligned_fused(frames: &[(Raster, Pose2D)]) -> Result<RgbTensor> {
    const K: usize = 5;
    if frames.len() != K {
        return Err(Error::invalid(format!(
            "aligned-fused encoding needs exactly {K} frames, got {}",
            frames.len()
        )));
    }
    let newest_yaw = frames[K - 1].1.yaw_deg;
    let aligned: Vec<Raster> = frames
        .iter()
        .map(|(r, pose)| yaw_shift(r, pose.yaw_deg - newest_yaw))
        .collect();

    let rows = aligned[0].rows();
    let cols = aligned[0].cols();
    let mut out = RgbTensor::zeros(rows, cols);

    // Channel 0: hit counts.
    let mut counts = vec![0u8; rows * cols];
    for r in &aligned {
        for (i, &v) in r.data().iter().enumerate() {
            if v != 0 {
                counts[i] += 1;
            }
        }
    }
    let ch0: Vec<u8> = counts.iter().map(|&c| (c as u16 * 255 / K as u16) as u8).collect();

    // Channel 1: Sobel magnitude of the count channel, replicate border.
    let at = |r: i64, c: i64| -> f64 {
        let rr = r.clamp(0, rows as i64 - 1) as usize;
        let cc = c.clamp(0, cols as i64 - 1) as usize;
        ch0[rr * cols + cc] as f64
    };
    let mut ch1 = vec![0u8; rows * cols];
    for r in 0..rows as i64 {
        for c in 0..cols as i64 {
            let gx = -at(r - 1, c - 1) + at(r - 1, c + 1) - 2.0 * at(r, c - 1)
                + 2.0 * at(r, c + 1)
                - at(r + 1, c - 1)
                + at(r + 1, c + 1);
            let gy = -at(r - 1, c - 1) - 2.0 * at(r - 1, c) - at(r - 1, c + 1)
                + at(r + 1, c - 1)
                + 2.0 * at(r + 1, c)
                + at(r + 1, c + 1);
            let mag = (gx * gx + gy * gy).sqrt().round().min(255.0);
            ch1[(r as usize) * cols + c as usize] = mag as u8;
        }
    }

    // Channel 2: 3x3 box density of the newest aligned raster; a window of
    // 9 hits maps to 255. Out-of-bounds neighbors count as empty.
    let newest = &aligned[K - 1];
    let mut ch2 = vec![0u8; rows * cols];
    for r in 0..rows as i64 {
        for c in 0..cols as i64 {
            let mut n = 0u32;
            for dr in -1..=1 {
                for dc in -1..=1 {
                    let rr = r + dr;
                    let cc = c + dc;
                    if rr >= 0 && rr < rows as i64 && cc >= 0 && cc < cols as i64 {
                        if newest.get(rr as usize, cc as usize) != 0 {
                            n += 1;
                        }
                    }
                }
            }
            let v = ((n as f64) * 255.0 / 9.0).round().min(255.0);
            ch2[(r as usize) * cols + c as usize] = v as u8;
        }
    }

    for i in 0..rows * cols {
        out.data[i * 3] = ch0[i];
        out.data[i * 3 + 1] = ch1[i];
        out.data[i * 3 + 2] = ch2[i];
    }
    Ok(out)
}
