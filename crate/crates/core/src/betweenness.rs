//! Edge betweenness, exact and truncated to a hop depth.
//!
//! Distances are hop counts; edge weights are ignored. A node pair `(s, t)`
//! at distance `d` contributes total credit 1 split equally over its shortest
//! paths, so the pair deposits exactly `d` across the edges it uses. With
//! depth `h`, only pairs at distance `<= h` contribute; with `h` at least the
//! diameter this is ordinary edge betweenness.
//!
//! Each source runs one breadth-first search that stops expanding at depth
//! `h`, followed by the usual backward dependency accumulation. Summing over
//! all sources counts every unordered pair twice; reported scores are halved.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Neighbor, NodeId};

const UNSEEN: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    Hops(u32),
    Unbounded,
}

impl Depth {
    #[inline]
    fn limit(self) -> u32 {
        match self {
            Depth::Hops(h) => h,
            Depth::Unbounded => UNSEEN - 1,
        }
    }
}

/// Per-edge betweenness, indexed by [`EdgeId`].
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeScores {
    scores: Vec<f64>,
    depth: Depth,
}

impl EdgeScores {
    /// Wraps per-edge totals accumulated over every source (each unordered
    /// pair counted from both ends), halving them.
    pub fn from_ordered_totals(mut totals: Vec<f64>, depth: Depth) -> EdgeScores {
        for s in &mut totals {
            *s *= 0.5;
        }
        EdgeScores {
            scores: totals,
            depth,
        }
    }

    #[inline]
    pub fn get(&self, e: EdgeId) -> f64 {
        self.scores[e.index()]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.scores
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Scratch state for single-source traversals, reusable across sources.
/// Only touched entries are reset, so a traversal costs time proportional to
/// the explored ball rather than to `n`.
#[derive(Clone, Debug)]
pub struct TraversalWorkspace {
    /// Per-node `(dist, sigma, delta)`, kept together so a visit touches one
    /// cache line.
    state: Vec<NodeState>,
    order: Vec<u32>,
    /// Shortest-path DAG arcs `(v, w, edge)` with `dist(w) = dist(v) + 1`, in
    /// discovery order.
    arcs: Vec<(u32, u32, u32)>,
}

#[derive(Clone, Copy, Debug)]
struct NodeState {
    dist: u32,
    sigma: f64,
    delta: f64,
}

impl NodeState {
    const UNSEEN: NodeState = NodeState {
        dist: UNSEEN,
        sigma: 0.0,
        delta: 0.0,
    };
}

impl TraversalWorkspace {
    pub fn new(node_count: usize) -> Self {
        TraversalWorkspace {
            state: alloc::vec![NodeState::UNSEEN; node_count],
            order: Vec::new(),
            arcs: Vec::new(),
        }
    }

    /// Adds the credit of every pair `(source, t)` with `dist(source, t) <= depth`
    /// to `totals` (indexed by edge id).
    pub fn accumulate_source(
        &mut self,
        g: &Graph,
        source: NodeId,
        depth: Depth,
        totals: &mut [f64],
    ) {
        self.accumulate_filtered(g, source, depth, totals, |_| true);
    }

    pub(crate) fn accumulate_filtered<F>(
        &mut self,
        g: &Graph,
        source: NodeId,
        depth: Depth,
        totals: &mut [f64],
        active: F,
    ) where
        F: Fn(EdgeId) -> bool,
    {
        let limit = depth.limit();
        let s = source.index();
        self.order.clear();
        self.arcs.clear();
        self.state[s].dist = 0;
        self.state[s].sigma = 1.0;
        self.order.push(source.0);

        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head] as usize;
            head += 1;
            let dv = self.state[v].dist;
            if dv >= limit {
                continue;
            }
            for nb in g.adjacent(NodeId(v as u32)) {
                if !active(nb.edge) {
                    continue;
                }
                let w = nb.node.index();
                if self.state[w].dist == UNSEEN {
                    self.state[w].dist = dv + 1;
                    self.order.push(w as u32);
                }
                if self.state[w].dist == dv + 1 {
                    self.state[w].sigma += self.state[v].sigma;
                    self.arcs.push((v as u32, w as u32, nb.edge.0));
                }
            }
        }

        // Arcs are discovered layer by layer, so in reverse every arc leaving
        // w is settled before any arc entering w.
        for &(v, w, e) in self.arcs.iter().rev() {
            let (v, w) = (v as usize, w as usize);
            let credit = self.state[v].sigma * (1.0 + self.state[w].delta) / self.state[w].sigma;
            totals[e as usize] += credit;
            self.state[v].delta += credit;
        }

        for &v in &self.order {
            self.state[v as usize] = NodeState::UNSEEN;
        }
    }
}

fn betweenness_filtered<F>(g: &Graph, depth: Depth, active: F) -> EdgeScores
where
    F: Fn(EdgeId) -> bool + Copy,
{
    let mut totals = alloc::vec![0.0; g.edge_count()];
    let mut ws = TraversalWorkspace::new(g.node_count());
    for s in g.nodes() {
        ws.accumulate_filtered(g, s, depth, &mut totals, active);
    }
    EdgeScores::from_ordered_totals(totals, depth)
}

/// h-depth local edge betweenness. `h` must be at least 1.
pub fn local_edge_betweenness(g: &Graph, h: u32) -> Result<EdgeScores> {
    if h < 1 {
        return Err(Error::InvalidParameter(
            "betweenness depth must be at least 1".into(),
        ));
    }
    Ok(betweenness_filtered(g, Depth::Hops(h), |_| true))
}

/// Exact edge betweenness over all pairs. O(n·m); meant for graphs of a few
/// thousand nodes.
pub fn full_edge_betweenness(g: &Graph) -> EdgeScores {
    betweenness_filtered(g, Depth::Unbounded, |_| true)
}

/// Exact betweenness of the subgraph made of the edges flagged in `active`;
/// inactive edges score 0.
pub(crate) fn full_edge_betweenness_masked(g: &Graph, active: &[bool]) -> EdgeScores {
    betweenness_filtered(g, Depth::Unbounded, |e: EdgeId| active[e.index()])
}

/// Scores equal to nine decimal places rank as ties: the same credits summed
/// in a different order must not reorder symmetric edges.
#[inline]
fn rank_key(score: f64) -> f64 {
    libm::round(score * 1e9)
}

/// Adjacency lists reordered by ascending edge score, ties by neighbor id.
#[derive(Clone, Debug)]
pub struct RankedAdjacency {
    offsets: Vec<usize>,
    entries: Vec<Neighbor>,
}

impl RankedAdjacency {
    #[inline]
    pub fn ranked(&self, u: NodeId) -> &[Neighbor] {
        &self.entries[self.offsets[u.index()]..self.offsets[u.index() + 1]]
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }
}

pub fn sorted_neighbor_order(g: &Graph, scores: &EdgeScores) -> Result<RankedAdjacency> {
    if scores.len() != g.edge_count() {
        return Err(Error::MissingEdgeScores {
            expected: g.edge_count(),
            found: scores.len(),
        });
    }
    let mut offsets = Vec::with_capacity(g.node_count() + 1);
    let mut entries = Vec::with_capacity(2 * g.edge_count());
    offsets.push(0);
    for u in g.nodes() {
        let start = entries.len();
        entries.extend_from_slice(g.adjacent(u));
        // adjacency is already ascending by neighbor id and the sort is stable
        entries[start..]
            .sort_by(|a, b| rank_key(scores.get(a.edge)).total_cmp(&rank_key(scores.get(b.edge))));
        offsets.push(entries.len());
    }
    Ok(RankedAdjacency { offsets, entries })
}
