use std::path::PathBuf;

use crate::relation::Side;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{what} is {actual}, limit is {limit}")]
    Capacity {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("a relation needs at least one point on each side")]
    EmptySide,

    #[error("{side} index {index} out of range (side has {len} points)")]
    IndexOutOfRange {
        side: Side,
        index: usize,
        len: usize,
    },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("family does not dominate: point {0} of the minus side is uncovered")]
    NotDominating(usize),

    #[error("search gave up after {nodes} nodes")]
    Inconclusive { nodes: u64 },

    #[error("union split degenerates: {0}")]
    DegenerateSplit(String),

    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
