//! Camera-free 2D LiDAR object detection toolkit.
//!
//! The crate covers the full offline and online path around a (pluggable)
//! detector network:
//!
//! 1. **Encoding** — each 360° scan is quantized into a 64×360 binary raster
//!    ([`raster`]), padded to 64×384, and the last three rasters are stacked
//!    into one RGB tensor ([`temporal`]) that a stride-32 CNN can consume.
//! 2. **Data** — randomized indoor scenarios ([`world`]), a segment-based
//!    ray-cast scan simulator ([`sim`]), and automatic YOLO-format label
//!    projection ([`label`]) replace a full robot simulator for dataset
//!    generation ([`dataset`]).
//! 3. **Evaluation** — IoU/NMS/greedy matching, PR curves, AP/mAP and
//!    confusion matrices ([`eval`]).
//! 4. **Runtime** — the online FIFO inference loop with oracle, geometric
//!    and external-process detector backends, plus a per-stage latency
//!    benchmark ([`pipeline`]).
//!
//! All geometry is 2D, angles are handled in degrees, and every randomized
//! step is driven by explicit seeds so generated artifacts reproduce
//! bit-exactly.

pub mod dataset;
pub mod eval;
pub mod label;
pub mod pipeline;
pub mod raster;
pub mod sim;
pub mod temporal;
pub mod types;
pub mod viz;
pub mod world;

mod error;

pub use error::{Error, Result};

pub use eval::{evaluate, ConfusionMatrix, Detection, EvalFrame, EvalOptions, EvalReport};
pub use label::RasterBox;
pub use pipeline::{DetectorBackend, FrameContext, LatencyReport, Pipeline, StepOutput};
pub use raster::Raster;
pub use sim::{Episode, SegmentWorld};
pub use temporal::{FrameBuffer, RgbTensor};
pub use types::{EncodingConfig, ObjectClass, Point2, PolarScan, Pose2D};
pub use world::{GenerationConfig, Scenario, SplitAssignment, WorldObject};
