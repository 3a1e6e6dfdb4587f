use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid node id {node} (graph has {n} nodes)")]
    InvalidNode { node: usize, n: usize },

    #[error("invalid edge id {edge} (graph has {m} edges)")]
    InvalidEdge { edge: usize, m: usize },

    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },

    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("edge weight {value} is not a finite non-negative number")]
    BadWeight { value: f64 },

    #[error("endpoints must be distinct")]
    IdenticalEndpoints,

    #[error("trace is missing a forcing set for kept edge {edge}")]
    CorruptTrace { edge: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a subgraph: {0}")]
    NotSubgraph(String),

    #[error("edge {{{u}, {v}}} does not cross the declared bipartition")]
    NotBipartite { u: usize, v: usize },

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("estimated cost {cost} exceeds budget {budget}; pass force to override")]
    BudgetExceeded { cost: u128, budget: u128 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
