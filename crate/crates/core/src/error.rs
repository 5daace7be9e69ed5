use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index:?} out of range for grid {cells:?}")]
    Index { index: [usize; 3], cells: [usize; 3] },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("degenerate vector at cell {cell}: |m| = {norm:e}")]
    Degenerate { cell: usize, norm: f64 },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("demagnetization kernel build failed: {0}")]
    Kernel(String),

    #[error("field lives on a different mesh than expected")]
    MeshMismatch,

    #[error("blow-up at step {step}: {reason}")]
    BlowUp { step: usize, reason: String },

    #[error("wall locator failed: {0}")]
    Locator(String),

    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
