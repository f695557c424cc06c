use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition vector: {0}")]
    InvalidPartition(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A load bound that cannot be met. `partial` holds the cuts placed before
    /// the search got stuck at `position`.
    #[error("load bound {bound} is infeasible: no cut after position {position} keeps every tile within the bound")]
    InfeasibleLoad {
        bound: u64,
        position: usize,
        partial: Vec<usize>,
    },

    #[error("load imbalance is undefined when the total load is zero")]
    UndefinedImbalance,

    #[error("index ({row}, {col}) out of range for dimension {n}")]
    OutOfRange { row: usize, col: usize, n: usize },

    #[error("invalid rectangle rows [{r0}, {r1}) cols [{c0}, {c1}) for dimension {n}")]
    InvalidRectangle {
        r0: usize,
        r1: usize,
        c0: usize,
        c1: usize,
        n: usize,
    },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("invalid sparsification config: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("report: {0}")]
    Report(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
