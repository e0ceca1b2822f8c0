use crate::types::Pose2D;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A frame buffer does not hold enough frames to stack yet.
    #[error("not ready: {0}")]
    NotReady(String),

    /// Scenario generation could not place all objects/waypoints.
    #[error("scenario generation failed (seed {seed}): {reason}")]
    GenerationFailed { seed: u64, reason: String },

    /// A requested sensor pose lies inside solid geometry.
    #[error("pose ({:.3}, {:.3}, yaw {:.1}°) is in collision", pose.x, pose.y, pose.yaw_deg)]
    PoseInCollision { pose: Pose2D },

    /// A bin set was empty, so no box can be produced.
    #[error("no label: empty bin set")]
    NoLabel,

    /// A detector backend failed while processing a frame.
    #[error("backend '{backend}' failed at frame {frame}: {reason}")]
    Backend {
        backend: String,
        frame: usize,
        reason: String,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("image error: {0}")]
    Image(#[from] image::ImageError),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
