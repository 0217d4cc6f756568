//! Normalized undirected graphs and the edge-list text format.
//!
//! A [`Graph`] is immutable once built. Normalization drops self-loops,
//! forgets direction and merges parallel edges by summing their weights, so
//! every consumer can rely on a simple graph with strictly positive weights.
//!
//! Edge-list format: one edge per line, `u v [w]`, whitespace separated.
//! `u` and `v` are arbitrary non-whitespace labels, `w` an optional positive
//! real (default 1). Blank lines and lines whose first non-blank character is
//! `#` are ignored. LF and CRLF line endings are both accepted.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Dense node index in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Dense edge index in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Undirected edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: f64,
}

/// One entry of a node's adjacency list.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor {
    pub node: NodeId,
    pub weight: f64,
    pub edge: EdgeId,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// The input lists directed arcs. Direction is discarded either way; the
    /// flag is carried into the [`LoadReport`].
    pub directed: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub directed: bool,
    pub lines_read: usize,
    pub self_loops_dropped: usize,
    pub parallel_edges_merged: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<Neighbor>,
    strength: Vec<f64>,
    total_weight: f64,
}

impl Graph {
    /// Builds a graph on `node_count` nodes labeled `"0"`, `"1"`, ... from raw
    /// `(u, v, w)` triples, normalizing as described in the module docs.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (u32, u32, f64)>,
    {
        let labels = (0..node_count).map(|i| i.to_string()).collect();
        Self::from_labeled_edges(labels, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::from_edges`] with caller-supplied external labels.
    pub fn from_labeled_edges<I>(labels: Vec<String>, edges: I) -> Result<(Graph, LoadReport)>
    where
        I: IntoIterator<Item = (u32, u32, f64)>,
    {
        let n = labels.len();
        let mut report = LoadReport::default();
        let mut raw: Vec<(u32, u32, f64)> = Vec::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::NodeOutOfRange {
                        node: x as usize,
                        node_count: n,
                    });
                }
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidWeight { line: 0, weight: w });
            }
            if u == v {
                report.self_loops_dropped += 1;
                continue;
            }
            raw.push((u.min(v), u.max(v), w));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "{n} nodes exceeds the u32 index space"
            )));
        }

        raw.sort_by_key(|&(u, v, _)| (u, v));
        let mut edges: Vec<Edge> = Vec::with_capacity(raw.len());
        for (u, v, w) in raw {
            match edges.last_mut() {
                Some(last) if last.u.0 == u && last.v.0 == v => {
                    last.weight += w;
                    report.parallel_edges_merged += 1;
                }
                _ => edges.push(Edge {
                    u: NodeId(u),
                    v: NodeId(v),
                    weight: w,
                }),
            }
        }
        Ok((Self::assemble(labels, edges), report))
    }

    /// `edges` must already be sorted, deduplicated and loop-free with `u < v`.
    fn assemble(labels: Vec<String>, edges: Vec<Edge>) -> Graph {
        let n = labels.len();
        let mut degree = alloc::vec![0usize; n];
        for e in &edges {
            degree[e.u.index()] += 1;
            degree[e.v.index()] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let placeholder = Neighbor {
            node: NodeId(0),
            weight: 0.0,
            edge: EdgeId(0),
        };
        let mut adjacency = alloc::vec![placeholder; 2 * edges.len()];
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        // Edges are sorted by (u, v), so filling in edge order leaves every
        // adjacency list sorted by neighbor id.
        for (id, e) in edges.iter().enumerate() {
            let id = EdgeId(id as u32);
            adjacency[cursor[e.u.index()]] = Neighbor {
                node: e.v,
                weight: e.weight,
                edge: id,
            };
            cursor[e.u.index()] += 1;
        }
        for (id, e) in edges.iter().enumerate() {
            let id = EdgeId(id as u32);
            adjacency[cursor[e.v.index()]] = Neighbor {
                node: e.u,
                weight: e.weight,
                edge: id,
            };
            cursor[e.v.index()] += 1;
        }
        for u in 0..n {
            adjacency[offsets[u]..offsets[u + 1]].sort_by_key(|nb| nb.node);
        }
        let strength: Vec<f64> = (0..n)
            .map(|u| {
                adjacency[offsets[u]..offsets[u + 1]]
                    .iter()
                    .map(|nb| nb.weight)
                    .sum()
            })
            .collect();
        let total_weight = edges.iter().map(|e| e.weight).sum();
        Graph {
            labels,
            edges,
            offsets,
            adjacency,
            strength,
            total_weight,
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> {
        (0..self.labels.len() as u32).map(NodeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.index()]
    }

    /// Incident edges of `u`, ascending by neighbor id.
    pub fn neighbors(&self, u: NodeId) -> Result<&[Neighbor]> {
        if u.index() >= self.node_count() {
            return Err(Error::NodeOutOfRange {
                node: u.index(),
                node_count: self.node_count(),
            });
        }
        Ok(self.adjacent(u))
    }

    /// Unchecked variant of [`Graph::neighbors`]; panics when `u` is out of range.
    #[inline]
    pub fn adjacent(&self, u: NodeId) -> &[Neighbor] {
        let u = u.index();
        &self.adjacency[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: NodeId) -> usize {
        self.offsets[u.index() + 1] - self.offsets[u.index()]
    }

    #[inline]
    pub fn strength(&self, u: NodeId) -> f64 {
        self.strength[u.index()]
    }

    /// Sum of all edge weights (each undirected edge counted once).
    #[inline]
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// True when some edge weight differs from 1.
    pub fn is_weighted(&self) -> bool {
        self.edges.iter().any(|e| e.weight != 1.0)
    }

    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// External label to dense id.
    pub fn label_index(&self) -> BTreeMap<&str, NodeId> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), NodeId(i as u32)))
            .collect()
    }

    /// Renders the graph in edge-list format. Weights are written only when
    /// the graph is weighted, using the shortest representation that parses
    /// back to the same `f64`.
    ///
    /// Lines are grouped by the larger endpoint so that labels first appear
    /// in dense-id order wherever possible; a graph produced by
    /// [`parse_edge_list`] therefore reloads with identical ids.
    pub fn to_edge_list(&self) -> String {
        use core::fmt::Write;
        let weighted = self.is_weighted();
        let mut out = String::new();
        let mut seen = alloc::vec![false; self.node_count()];
        let mut group: Vec<(NodeId, f64)> = Vec::new();
        for v in self.nodes() {
            group.clear();
            group.extend(
                self.adjacent(v)
                    .iter()
                    .filter(|nb| nb.node < v)
                    .map(|nb| (nb.node, nb.weight)),
            );
            // Unseen lower endpoints go first so they are introduced before `v`.
            group.sort_by_key(|&(u, _)| (seen[u.index()], u));
            for &(u, w) in &group {
                seen[u.index()] = true;
                seen[v.index()] = true;
                let (a, b) = (self.label(u), self.label(v));
                if weighted {
                    let _ = writeln!(out, "{a} {b} {w}");
                } else {
                    let _ = writeln!(out, "{a} {b}");
                }
            }
        }
        out
    }
}

/// Parses edge-list text into a normalized graph. Dense ids follow the order
/// in which labels first appear.
pub fn parse_edge_list(text: &str, options: LoadOptions) -> Result<(Graph, LoadReport)> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, u32> = BTreeMap::new();
    let mut raw = Vec::new();
    let mut lines_read = 0;

    let mut intern = |label: &str, labels: &mut Vec<String>| -> u32 {
        if let Some(&id) = index.get(label) {
            return id;
        }
        let id = labels.len() as u32;
        labels.push(label.to_string());
        index.insert(label.to_string(), id);
        id
    };

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        lines_read += 1;
        let mut tokens = line.split_whitespace();
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: line_no,
                message: "expected `u v [w]`, found fewer than two fields".into(),
            });
        };
        let weight = match tokens.next() {
            None => 1.0,
            Some(tok) => tok.parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("weight `{tok}` is not a number"),
            })?,
        };
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: "expected `u v [w]`, found more than three fields".into(),
            });
        }
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::InvalidWeight {
                line: line_no,
                weight,
            });
        }
        let u = intern(a, &mut labels);
        let v = intern(b, &mut labels);
        raw.push((u, v, weight));
    }

    let (graph, mut report) = Graph::from_labeled_edges(labels, raw)?;
    report.directed = options.directed;
    report.lines_read = lines_read;
    Ok((graph, report))
}
