use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: weight {weight} must be a positive finite number")]
    InvalidWeight { line: usize, weight: f64 },

    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge scores cover {found} edges, graph has {expected}")]
    MissingEdgeScores { expected: usize, found: usize },

    #[error("graph has no edges; modularity is undefined")]
    NoEdges,

    #[error("partition covers {found} nodes, expected {expected}")]
    PartitionSize { expected: usize, found: usize },

    #[error("node `{0}` appears in the partition but not in the graph")]
    UnknownNode(String),

    #[error("node `{0}` of the graph is missing from the partition")]
    MissingNode(String),

    #[error("node `{0}` is assigned more than once")]
    DuplicateNode(String),

    #[error(
        "graph has {node_count} nodes, above the Girvan-Newman limit of {limit}; \
         raise the limit explicitly to run anyway"
    )]
    SizeLimit { node_count: usize, limit: usize },

    #[error("infeasible generator configuration: {0}")]
    InfeasibleConfig(String),
}
