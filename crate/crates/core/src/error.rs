use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PpaError {
    #[error("objective value {value} is not finite")]
    NonFiniteObjective { value: f64 },

    #[error("cannot normalize an empty population")]
    EmptyPopulation,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid bounds in dimension {dim}: lower {lower} must be < upper {upper}")]
    InvalidBounds { dim: usize, lower: f64, upper: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("selection pool has {pool} individuals but {pop_size} are required")]
    PoolTooSmall { pool: usize, pop_size: usize },

    #[error("unknown function '{name}' (valid: {valid})")]
    UnknownFunction { name: String, valid: String },

    #[error("median of an empty sample")]
    EmptySample,

    #[error("sub-seed collision between cells {first:?} and {second:?}")]
    SeedCollision {
        first: (usize, usize, usize),
        second: (usize, usize, usize),
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("config: {0}")]
    Config(#[from] toml::de::Error),

    #[error("serialize: {0}")]
    Serialize(#[from] toml::ser::Error),
}

pub type Result<T, E = PpaError> = std::result::Result<T, E>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> PpaError {
    let path = path.into();
    move |source| PpaError::Io { path, source }
}
