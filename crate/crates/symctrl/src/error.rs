use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("block budget exceeded: l_max = {requested} but the configured budget is {budget}")]
    BlockBudgetExceeded { requested: usize, budget: usize },

    #[error("negative eigenvalue {value} in block {block}: fractional powers need a nonnegative spectrum")]
    NegativeEigenvalue { block: usize, value: f64 },

    #[error("dimension mismatch at block {block}: {detail}")]
    DimensionMismatch { block: usize, detail: String },

    #[error("block {block} is not square ({rows}x{cols})")]
    NonSquareBlock {
        block: usize,
        rows: usize,
        cols: usize,
    },

    #[error("matrix has non-finite entries ({context})")]
    NonFinite { context: String },

    #[error("matrix is not diagonal: off-diagonal mass {mass:.3e} exceeds {limit:.3e}")]
    NotDiagonal { mass: f64, limit: f64 },

    #[error("quadrature did not converge after {doublings} panel doublings; last two iterates differ by {last_delta:.3e}")]
    QuadratureNotConverged { doublings: usize, last_delta: f64 },

    #[error("block {block} is not controllable (rank {rank} < dim {dim}); cannot synthesize a steering control")]
    UncontrollableBlock {
        block: usize,
        rank: usize,
        dim: usize,
    },

    #[error("invalid precondition: {0}")]
    Precondition(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
