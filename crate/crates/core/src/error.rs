use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}: the model has no self-loops")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("kernel undefined at distance {distance}: {reason}")]
    KernelUndefined { distance: usize, reason: String },

    #[error("n = {n} exceeds the naive sampler limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("level {level} exceeds filtration maximum {c_max}")]
    LevelAboveMax { level: f64, c_max: f64 },

    #[error("fixed-point iteration did not converge in {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
