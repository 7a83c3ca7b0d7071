use thiserror::Error;

use crate::tree::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bad vertex {0}")]
    BadVertex(VertexId),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("vertex {x} is not a descendant of {y}")]
    NotDescendant { y: VertexId, x: VertexId },
    #[error("finite weights sum past 2^62")]
    WeightOverflow,
    #[error("weight map has {got} entries, tree has {n} vertices")]
    WeightLength { n: usize, got: usize },
    #[error("{n} vertices exceeds the enumeration cap of {max}")]
    Capacity { n: usize, max: usize },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generation failed: {0}")]
    Generation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
