//! Girvan-Newman divisive clustering.
//!
//! Repeatedly recomputes exact edge betweenness on the remaining graph and
//! removes one edge of maximum betweenness; ties go to the lexicographically
//! smallest `(u, v)` dense-id pair, which makes the dendrogram reproducible.
//! Every level's partition is the connected components of what remains, and
//! the returned partition is the level of highest modularity (earliest level
//! on ties). Cost is O(n·m²).

use alloc::vec::Vec;

use crate::betweenness::full_edge_betweenness_masked;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, NodeId};
use crate::metrics::modularity;
use crate::partition::Partition;

pub const DEFAULT_NODE_LIMIT: usize = 10_000;

/// Betweenness values this close (relative) to the maximum count as tied;
/// the same path counts summed in different orders can differ in the last bits.
const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Level {
    pub community_count: usize,
    pub modularity: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dendrogram {
    /// Removed edges in order; length m.
    pub removals: Vec<EdgeId>,
    /// `levels[i]` describes the graph after the first `i` removals; length m + 1.
    pub levels: Vec<Level>,
    pub best_level: usize,
}

impl Dendrogram {
    /// Reconstructs the components after the first `level` removals.
    pub fn partition_at(&self, g: &Graph, level: usize) -> Partition {
        let mut active = alloc::vec![true; g.edge_count()];
        for e in &self.removals[..level.min(self.removals.len())] {
            active[e.index()] = false;
        }
        components(g, &active)
    }
}

/// Connected components over the active edges.
pub(crate) fn components(g: &Graph, active: &[bool]) -> Partition {
    let n = g.node_count();
    let mut label = alloc::vec![u32::MAX; n];
    let mut stack = Vec::new();
    for root in 0..n {
        if label[root] != u32::MAX {
            continue;
        }
        label[root] = root as u32;
        stack.push(root);
        while let Some(v) = stack.pop() {
            for nb in g.adjacent(NodeId(v as u32)) {
                let w = nb.node.index();
                if active[nb.edge.index()] && label[w] == u32::MAX {
                    label[w] = root as u32;
                    stack.push(w);
                }
            }
        }
    }
    Partition::from_node_labels(&label)
}

/// Runs Girvan-Newman to exhaustion, refusing graphs above `node_limit` nodes.
pub fn girvan_newman(g: &Graph, node_limit: usize) -> Result<(Partition, Dendrogram)> {
    if g.node_count() > node_limit {
        return Err(Error::SizeLimit {
            node_count: g.node_count(),
            limit: node_limit,
        });
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let m = g.edge_count();
    let mut active = alloc::vec![true; m];
    let mut removals = Vec::with_capacity(m);
    let mut levels = Vec::with_capacity(m + 1);

    let mut current = components(g, &active);
    let mut best = (modularity(g, &current)?, current.clone());
    levels.push(Level {
        community_count: current.community_count(),
        modularity: best.0,
    });
    let mut best_level = 0;

    for _ in 0..m {
        let scores = full_edge_betweenness_masked(g, &active);
        let max = (0..m)
            .filter(|&e| active[e])
            .map(|e| scores.as_slice()[e])
            .fold(f64::MIN, f64::max);
        let floor = max - TIE_TOLERANCE * max.abs().max(1.0);
        // edge ids are ordered by (u, v), so the first tied edge is the smallest pair
        let removed = (0..m)
            .find(|&e| active[e] && scores.as_slice()[e] >= floor)
            .expect("an active edge");
        active[removed] = false;
        removals.push(EdgeId(removed as u32));

        current = components(g, &active);
        let q = modularity(g, &current)?;
        levels.push(Level {
            community_count: current.community_count(),
            modularity: q,
        });
        if q > best.0 {
            best = (q, current.clone());
            best_level = levels.len() - 1;
        }
    }

    Ok((
        best.1,
        Dendrogram {
            removals,
            levels,
            best_level,
        },
    ))
}
