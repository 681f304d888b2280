use thiserror::Error;

use crate::hfree::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),

    #[error("weight vector has {got} entries, expected {expected}")]
    WeightCount { got: usize, expected: usize },

    #[error("weight sum overflows u64")]
    WeightOverflow,

    #[error("colour {colour} out of range 1..={k}")]
    ColourOutOfRange { colour: usize, k: usize },

    #[error("candidate subgraph {index} is not connected")]
    DisconnectedCandidate { index: usize },

    #[error("input is not (P5+{r}K1)-free: {witness}")]
    NotFree { r: usize, witness: Witness },

    #[error("oracle refuses graph on {n} vertices (cap {cap})")]
    OracleCap { n: usize, cap: usize },

    #[error("invalid canvas: {0}")]
    InvalidCanvas(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no suitable instance after {tries} attempts")]
    RetryBudget { tries: usize },

    #[error("{0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
