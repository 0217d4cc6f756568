//! Community detection on undirected weighted graphs, without `std`.
//!
//! The centerpiece is [`propagation::wlpa_leb`]: label propagation where each
//! pass first lets a node listen only to the half of its neighborhood joined by
//! the lowest h-depth local edge betweenness, then to every neighbor. Around it
//! sit the pieces needed to evaluate it honestly:
//!
//! * [`graph`]: normalized adjacency, edge-list parsing.
//! * [`betweenness`]: truncated and exact edge betweenness (Brandes-style).
//! * [`propagation`]: classic LPA and the betweenness-guided variant.
//! * [`metrics`]: modularity, NMI, strong/weak community predicates.
//! * [`generator`]: planted l-partition benchmark graphs.
//! * [`girvan_newman`]: the divisive baseline.
//!
//! Everything here is pure computation over `alloc`; file IO, threads and the
//! command line live in the companion `wlpa` crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod betweenness;
pub mod error;
pub mod generator;
pub mod girvan_newman;
pub mod graph;
pub mod metrics;
pub mod partition;
pub mod propagation;

pub use betweenness::{
    full_edge_betweenness, local_edge_betweenness, sorted_neighbor_order, Depth, EdgeScores,
    RankedAdjacency, TraversalWorkspace,
};
pub use error::{Error, Result};
pub use generator::{generate, generate_weighted, GeneratorConfig, PlantedGraph};
pub use girvan_newman::{girvan_newman, Dendrogram, DEFAULT_NODE_LIMIT};
pub use graph::{parse_edge_list, Edge, EdgeId, Graph, LoadOptions, LoadReport, Neighbor, NodeId};
pub use metrics::{
    modularity, nmi, quality_report, strong_weak_check, CommunityFlags, QualityReport,
};
pub use partition::Partition;
pub use propagation::{detect, lpa, wlpa_leb, Algorithm, Detection, LpaConfig};
