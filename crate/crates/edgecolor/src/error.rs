use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("edge {edge} already carries color {color}")]
    AlreadyColored { edge: usize, color: usize },

    #[error("edge {edge} is uncolored")]
    NotColored { edge: usize },

    #[error("color {color} already occupied at vertex {vertex} (edge {occupant})")]
    ColorConflict {
        vertex: usize,
        color: usize,
        occupant: usize,
    },

    #[error("color {color} out of range for {r} colors")]
    ColorOutOfRange { color: usize, r: usize },

    #[error("chain is not shiftable: {0}")]
    NotShiftable(String),

    #[error("chain is not happy at its end edge")]
    NotHappy,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("graph too large for exhaustive search: {edges} edges (limit {limit})")]
    TooLarge { edges: usize, limit: usize },

    #[error("no progress in {0} consecutive stages, aborting")]
    Starvation(usize),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::InternalInvariant(msg.into())
    }
}
