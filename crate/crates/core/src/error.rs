use thiserror::Error;

pub type Result<T> = std::result::Result<T, TuranError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TuranError {
    #[error("graph needs {needed} vertices, capacity is {capacity}")]
    CapacityExceeded { needed: usize, capacity: usize },

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("invalid graph6: {0}")]
    Graph6(String),

    #[error("not a cycle of the graph: {0}")]
    NotACycle(String),

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("graph on {order} vertices is too large for covering enumeration (max {max})")]
    TooLarge { order: usize, max: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown graph name: {0}")]
    UnknownGraph(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for TuranError {
    fn from(e: std::io::Error) -> Self {
        TuranError::Io(e.to_string())
    }
}
