use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Variants are grouped by how the CLI maps them to exit codes: `Parse` is a
/// syntax problem in a bundle expression (exit 2), everything else is a
/// domain violation (exit 3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight {0:?} is not weakly decreasing")]
    NotDominant(Vec<i64>),

    #[error("partition {partition:?} does not fit in a {rows} x {width} rectangle")]
    RectangleOverflow {
        partition: Vec<u32>,
        rows: usize,
        width: u32,
    },

    #[error("wedge index {index} exceeds the bundle rank {rank}")]
    WedgeRank { index: usize, rank: usize },

    #[error("weight has {got} entries where {expected} fit")]
    WeightLength { got: usize, expected: usize },

    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },

    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
