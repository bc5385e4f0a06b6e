use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("image contains no object pixels")]
    EmptyObject,

    #[error("moment order p+q = {0} exceeds the supported maximum of 3")]
    MomentOrder(u32),

    #[error("image dimensions {rows}x{cols} do not match {len} pixels")]
    ImageShape { rows: usize, cols: usize, len: usize },

    #[error("pixel value {0} is not binary")]
    NonBinaryPixel(u8),

    #[error("insufficient data: need at least {needed} vectors, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("feature dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("feature value {0} lies outside [0, 1]")]
    FeatureRange(f64),

    #[error("histogram is degenerate: every pixel has intensity {0}")]
    DegenerateHistogram(u8),

    #[error("grid of {cells} cells cannot hold {requested} {what}")]
    CapacityExceeded {
        what: &'static str,
        requested: usize,
        cells: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("no items to measure")]
    NoItems,

    #[error("k must be odd, got {0}")]
    EvenK(usize),

    #[error("need at least {needed} labeled markers, found {found}")]
    NotEnoughMarkers { needed: usize, found: usize },

    #[error("prediction and truth id sets differ")]
    IdMismatch,

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("duplicate grid position ({0}, {1})")]
    DuplicatePosition(usize, usize),

    #[error("position ({0}, {1}) is outside the grid")]
    OutOfBounds(usize, usize),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
