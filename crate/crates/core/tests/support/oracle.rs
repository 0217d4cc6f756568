//! Reference implementations that share no code path with the library:
//! exhaustive path enumeration for betweenness and the pairwise form of
//! modularity.

use std::collections::HashMap;

use wlpa_core::{Graph, NodeId, Partition};

fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.node_count()];
    for e in g.edges() {
        adj[e.u.index()].push(e.v.index());
        adj[e.v.index()].push(e.u.index());
    }
    adj
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// All simple paths from `s` to `t` with exactly `len` edges.
fn paths_of_length(adj: &[Vec<usize>], s: usize, t: usize, len: usize) -> Vec<Vec<usize>> {
    fn walk(
        adj: &[Vec<usize>],
        t: usize,
        len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let here = *path.last().unwrap();
        let steps = path.len() - 1;
        if steps == len {
            if here == t {
                out.push(path.clone());
            }
            return;
        }
        for &next in &adj[here] {
            if !on_path[next] {
                on_path[next] = true;
                path.push(next);
                walk(adj, t, len, path, on_path, out);
                path.pop();
                on_path[next] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; adj.len()];
    on_path[s] = true;
    walk(adj, t, len, &mut vec![s], &mut on_path, &mut out);
    out
}

/// Shortest paths between `s` and `t` found by increasing the path length
/// until some simple path exists. Empty when disconnected or longer than `max_len`.
pub fn shortest_paths(g: &Graph, s: usize, t: usize, max_len: usize) -> Vec<Vec<usize>> {
    let adj = adjacency(g);
    for len in 1..=max_len.min(g.node_count().saturating_sub(1)) {
        let found = paths_of_length(&adj, s, t, len);
        if !found.is_empty() {
            return found;
        }
    }
    Vec::new()
}

/// Edge betweenness by enumerating every shortest path of every unordered
/// pair within `depth` hops (`None` = unbounded). Keyed by `(u, v)`, `u < v`.
pub fn enumerated_betweenness(g: &Graph, depth: Option<usize>) -> HashMap<(usize, usize), f64> {
    let n = g.node_count();
    let max_len = depth.unwrap_or(n);
    let mut scores: HashMap<(usize, usize), f64> = g
        .edges()
        .iter()
        .map(|e| (edge_key(e.u.index(), e.v.index()), 0.0))
        .collect();
    for s in 0..n {
        for t in s + 1..n {
            let paths = shortest_paths(g, s, t, max_len);
            let share = 1.0 / paths.len() as f64;
            for p in &paths {
                for w in p.windows(2) {
                    *scores.get_mut(&edge_key(w[0], w[1])).unwrap() += share;
                }
            }
        }
    }
    scores
}

/// Credit deposited by the single pair `(s, t)`, summed over edges.
pub fn pair_credit(g: &Graph, s: usize, t: usize) -> f64 {
    let paths = shortest_paths(g, s, t, g.node_count());
    let share = 1.0 / paths.len().max(1) as f64;
    paths.iter().map(|p| (p.len() - 1) as f64 * share).sum()
}

/// Hop distance by enumeration, `None` when disconnected.
pub fn distance(g: &Graph, s: usize, t: usize) -> Option<usize> {
    if s == t {
        return Some(0);
    }
    shortest_paths(g, s, t, g.node_count())
        .first()
        .map(|p| p.len() - 1)
}

/// `Q = 1/(2W) sum_ij [A_ij - s_i s_j / (2W)] delta(c_i, c_j)` over all
/// ordered node pairs.
pub fn pairwise_modularity(g: &Graph, p: &Partition) -> f64 {
    let n = g.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for e in g.edges() {
        a[e.u.index()][e.v.index()] += e.weight;
        a[e.v.index()][e.u.index()] += e.weight;
    }
    let strength: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_w: f64 = strength.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if p.community_of(NodeId(i as u32)) == p.community_of(NodeId(j as u32)) {
                q += a[i][j] - strength[i] * strength[j] / two_w;
            }
        }
    }
    q / two_w
}
