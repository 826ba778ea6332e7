use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no codewords")]
    EmptyPartition,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("degenerate codeword: {0:?} is already in the partition")]
    DegenerateCodeword(Vec<f64>),

    #[error("cannot empty partition")]
    CannotEmptyPartition,

    #[error("cell index {index} out of range for {len} cells")]
    CellOutOfRange { index: usize, len: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("unknown environment `{0}`")]
    UnknownEnvironment(String),

    #[error("unknown teacher `{0}`")]
    UnknownTeacher(String),

    #[error("malformed teacher file: {0}")]
    TeacherFile(String),

    #[error("malformed policy bundle: {0}")]
    Bundle(String),

    #[error("codeword cap of {cap} exceeded at epoch {epoch}")]
    CodewordCap { cap: usize, epoch: usize },

    #[error("empty sample")]
    EmptySample,

    #[error("{0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
