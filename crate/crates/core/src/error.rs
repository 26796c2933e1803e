use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("non-finite value {value} for simplex {simplex:?}")]
    NonFinite { simplex: Vec<u64>, value: f64 },
    #[error("invalid simplex {0:?}: vertices must be non-empty and strictly increasing")]
    InvalidSimplex(Vec<u64>),
    #[error("duplicate simplex {0:?}")]
    DuplicateSimplex(Vec<u64>),
    #[error("face {face:?} of simplex {simplex:?} is missing")]
    MissingFace { simplex: Vec<u64>, face: Vec<u64> },
    #[error("face {face:?} (value {face_value}) enters after its coface {simplex:?} (value {value})")]
    NonMonotone {
        simplex: Vec<u64>,
        value: f64,
        face: Vec<u64>,
        face_value: f64,
    },
    #[error("complex exceeds the cap of {cap} simplices (reached {count})")]
    TooLarge { count: u64, cap: u64 },

    #[error("invalid metric input: {0}")]
    InvalidMetric(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("max_scale must be positive, got {0}")]
    BadScale(f64),
    #[error("this construction needs point coordinates, not a distance matrix")]
    NeedsCoordinates,
    #[error("landmark set is empty")]
    EmptyLandmarks,
    #[error("invalid landmark set: {0}")]
    InvalidLandmarks(String),
    #[error("nu = {nu} needs more landmarks than the {landmarks} available")]
    BadNu { nu: usize, landmarks: usize },
    #[error("invalid count {count} for {n} points")]
    BadCount { count: usize, n: usize },
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("graph is disconnected; component not reachable from node 0: {component:?}")]
    Disconnected { component: Vec<usize> },

    #[error("unsupported grid dimension {0} (expected 2 or 3)")]
    UnsupportedDim(usize),
    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("Wasserstein exponent must be >= 1, got {0}")]
    BadP(f64),
    #[error("frame {frame} is beyond the last step {steps}")]
    BadFrame { frame: usize, steps: usize },
    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
