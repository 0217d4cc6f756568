//! Disjoint node partitions and the partition text format.
//!
//! Community ids are normalized to `0..k` in order of first appearance when
//! scanning nodes by dense id, so two partitions compare equal exactly when
//! they group nodes the same way, regardless of the labels used to build them.
//!
//! Text format: one line per node, `external_node_label community_id`, both
//! whitespace-free tokens. Lines are written in dense-id order. `#` comments
//! and blank lines are ignored on read; community ids may be any token.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<u32>,
    community_count: usize,
}

impl Partition {
    /// Groups nodes by arbitrary labels (`labels[i]` is the label of node `i`).
    pub fn from_labels<L: Ord + Clone>(labels: &[L]) -> Partition {
        let mut ids: BTreeMap<L, u32> = BTreeMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = ids.len() as u32;
                *ids.entry(l.clone()).or_insert(next)
            })
            .collect();
        Partition {
            assignment,
            community_count: ids.len(),
        }
    }

    /// Faster [`Partition::from_labels`] for labels that are node indices,
    /// the form label propagation produces; every label must be below
    /// `labels.len()`.
    pub fn from_node_labels(labels: &[u32]) -> Partition {
        let mut remap = alloc::vec![u32::MAX; labels.len()];
        let mut next = 0u32;
        let assignment = labels
            .iter()
            .map(|&l| {
                let slot = &mut remap[l as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        Partition {
            assignment,
            community_count: next as usize,
        }
    }

    pub fn singletons(n: usize) -> Partition {
        Partition {
            assignment: (0..n as u32).collect(),
            community_count: n,
        }
    }

    /// Every node in one community (no communities when `n == 0`).
    pub fn whole(n: usize) -> Partition {
        Partition {
            assignment: alloc::vec![0; n],
            community_count: usize::from(n > 0),
        }
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    #[inline]
    pub fn community_of(&self, u: NodeId) -> u32 {
        self.assignment[u.index()]
    }

    /// Community id per node, dense in `0..community_count()`.
    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    /// Member lists, indexed by community id, each ascending.
    pub fn communities(&self) -> Vec<Vec<NodeId>> {
        let mut roster = alloc::vec![Vec::new(); self.community_count];
        for (i, &c) in self.assignment.iter().enumerate() {
            roster[c as usize].push(NodeId(i as u32));
        }
        roster
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = alloc::vec![0; self.community_count];
        for &c in &self.assignment {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// `(d_in, d_out)`: edges from `u` into its own community and out of it.
    pub fn degree_split(&self, g: &Graph, u: NodeId) -> (usize, usize) {
        let own = self.community_of(u);
        let inside = g
            .adjacent(u)
            .iter()
            .filter(|nb| self.community_of(nb.node) == own)
            .count();
        (inside, g.degree(u) - inside)
    }

    pub(crate) fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.node_count() != g.node_count() {
            return Err(Error::PartitionSize {
                expected: g.node_count(),
                found: self.node_count(),
            });
        }
        Ok(())
    }

    /// Renders the partition in the text format, labeling nodes with `g`'s
    /// external labels.
    pub fn to_text(&self, g: &Graph) -> Result<String> {
        use core::fmt::Write;
        self.check_covers(g)?;
        let mut out = String::new();
        for u in g.nodes() {
            let _ = writeln!(out, "{} {}", g.label(u), self.community_of(u));
        }
        Ok(out)
    }

    /// Parses the text format against `g`. Every node of `g` must appear
    /// exactly once, and no other node may appear.
    pub fn parse(text: &str, g: &Graph) -> Result<Partition> {
        let index = g.label_index();
        let mut labels: Vec<Option<String>> = alloc::vec![None; g.node_count()];
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let (Some(node), Some(community), None) = (tokens.next(), tokens.next(), tokens.next())
            else {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected `node community`, found `{line}`"),
                });
            };
            let id = *index
                .get(node)
                .ok_or_else(|| Error::UnknownNode(node.to_string()))?;
            let slot = &mut labels[id.index()];
            if slot.is_some() {
                return Err(Error::DuplicateNode(node.to_string()));
            }
            *slot = Some(community.to_string());
        }
        let mut assigned = Vec::with_capacity(labels.len());
        for (u, label) in labels.into_iter().enumerate() {
            match label {
                Some(l) => assigned.push(l),
                None => return Err(Error::MissingNode(g.labels()[u].clone())),
            }
        }
        Ok(Partition::from_labels(&assigned))
    }
}
