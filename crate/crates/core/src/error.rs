use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MbvError {
    #[error("loop edge at vertex {vertex}")]
    LoopEdge { vertex: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("vertex index {index} out of range for a graph with {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("input graph is not connected")]
    DisconnectedInput,

    #[error("lower bound was computed on a different graph")]
    StaleBound,

    #[error("edge set is not a spanning tree{}", component.map(|k| format!(" of component {k}")).unwrap_or_default())]
    NotASpanningTree { component: Option<usize> },

    #[error("no eligible vertex for start-restart selection")]
    NoEligibleVertex,

    #[error("cycle rank {cycle_rank} exceeds the enumeration guard of {limit}")]
    TooLarge { cycle_rank: usize, limit: usize },

    #[error("cannot build a connected simple graph with {n} vertices and {m} edges")]
    InfeasibleEdgeCount { n: usize, m: usize },

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("line {line}: bad edge line {text:?}")]
    BadEdgeLine { line: usize, text: String },

    #[error("invalid solver option: {0}")]
    InvalidOption(String),
}

pub type Result<T> = std::result::Result<T, MbvError>;
