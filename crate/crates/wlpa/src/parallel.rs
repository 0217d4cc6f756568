//! Multi-threaded betweenness and node-parallel label propagation.
//!
//! Betweenness splits sources into fixed blocks of [`SOURCE_BLOCK`] nodes.
//! Blocks are traversed concurrently, each into its own score vector, and the
//! vectors are added in block order. The floating-point summation order is
//! therefore fixed by the graph alone and results are bit-identical for every
//! thread count (they may differ from the serial [`wlpa_core`] routine in the
//! last bits).
//!
//! Node-parallel propagation updates nodes as independent tasks over shared
//! atomic labels. A task reads whatever labels are visible at that moment, so
//! runs are not reproducible, but convergence is checked on a quiescent
//! snapshot after each pass and is always genuine.

use std::sync::atomic::{AtomicU32, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use wlpa_core::propagation::{
    holds_best_label, most_frequent_label, restricted_lengths, LabelScratch,
};
use wlpa_core::{
    sorted_neighbor_order, Algorithm, Depth, Detection, EdgeScores, Graph, LpaConfig, Neighbor,
    NodeId, Partition, TraversalWorkspace,
};

use crate::error::Result;

pub const SOURCE_BLOCK: usize = 256;

/// Nodes handed to one propagation task.
const NODE_CHUNK: usize = 1024;

/// Builds a pool with `threads` workers (0 lets rayon choose).
pub fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?)
}

fn block_totals(g: &Graph, depth: Depth, block: usize) -> Vec<f64> {
    let mut workspace = TraversalWorkspace::new(g.node_count());
    let mut totals = vec![0.0; g.edge_count()];
    let end = ((block + 1) * SOURCE_BLOCK).min(g.node_count());
    for s in block * SOURCE_BLOCK..end {
        workspace.accumulate_source(g, NodeId(s as u32), depth, &mut totals);
    }
    totals
}

/// Edge betweenness on the current rayon pool. Blocks are processed in waves
/// of twice the pool size to bound memory at a few score vectors per thread.
pub fn edge_betweenness(g: &Graph, depth: Depth) -> Result<EdgeScores> {
    if let Depth::Hops(0) = depth {
        return Err(wlpa_core::Error::InvalidParameter(
            "betweenness depth must be at least 1".into(),
        )
        .into());
    }
    let blocks = g.node_count().div_ceil(SOURCE_BLOCK);
    let wave = 2 * rayon::current_num_threads().max(1);
    let mut totals = vec![0.0; g.edge_count()];
    let mut start = 0;
    while start < blocks {
        let end = (start + wave).min(blocks);
        let partial: Vec<Vec<f64>> = (start..end)
            .into_par_iter()
            .map(|b| block_totals(g, depth, b))
            .collect();
        for block in &partial {
            for (t, x) in totals.iter_mut().zip(block) {
                *t += x;
            }
        }
        start = end;
    }
    Ok(EdgeScores::from_ordered_totals(totals, depth))
}

/// Local betweenness at depth `h` on a dedicated pool of `threads` workers.
pub fn local_edge_betweenness(g: &Graph, h: u32, threads: usize) -> Result<EdgeScores> {
    pool(threads)?.install(|| edge_betweenness(g, Depth::Hops(h)))
}

fn parallel_sweep<'a, C>(
    labels: &[AtomicU32],
    order: &[u32],
    candidates: C,
    weighted: bool,
    seed: u64,
) where
    C: Fn(NodeId) -> &'a [Neighbor] + Sync,
{
    order
        .par_chunks(NODE_CHUNK)
        .enumerate()
        .for_each(|(chunk, nodes)| {
            let mut scratch = LabelScratch::new(labels.len());
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (chunk as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            for &u in nodes {
                let current = labels[u as usize].load(Ordering::Relaxed);
                let next = most_frequent_label(
                    current,
                    candidates(NodeId(u)),
                    |v| labels[v.index()].load(Ordering::Relaxed),
                    weighted,
                    &mut scratch,
                    &mut rng,
                );
                labels[u as usize].store(next, Ordering::Relaxed);
            }
        });
}

fn sweep_seed(seed: u64, sweep: u64) -> u64 {
    seed.wrapping_add(sweep << 32)
}

fn converged(g: &Graph, labels: &[u32], weighted: bool) -> bool {
    let nodes: Vec<u32> = (0..g.node_count() as u32).collect();
    nodes.par_chunks(NODE_CHUNK).all(|chunk| {
        let mut scratch = LabelScratch::new(g.node_count());
        chunk.iter().all(|&u| {
            holds_best_label(
                g,
                NodeId(u),
                &|v: NodeId| labels[v.index()],
                weighted,
                &mut scratch,
            )
        })
    })
}

/// Node-parallel LPA or WLPA-LEB on the current rayon pool. `scores` may be
/// supplied to skip the betweenness phase.
pub fn detect(g: &Graph, cfg: &LpaConfig, scores: Option<&EdgeScores>) -> Result<Detection> {
    cfg.validate()?;
    let n = g.node_count();
    if n == 0 {
        return Ok(Detection {
            partition: Partition::singletons(0),
            labels: Vec::new(),
            passes: 0,
            converged: true,
        });
    }
    let weighted = cfg.is_weighted(g);
    let ranked = match cfg.algorithm {
        Algorithm::Lpa => None,
        Algorithm::WlpaLeb => {
            let computed;
            let scores = match scores {
                Some(s) => s,
                None => {
                    computed = edge_betweenness(g, Depth::Hops(cfg.depth))?;
                    &computed
                }
            };
            Some(sorted_neighbor_order(g, scores)?)
        }
    };
    let restricted = ranked.as_ref().map(|r| restricted_lengths(g, r, weighted));

    let mut rng = cfg.rng();
    let labels: Vec<AtomicU32> = (0..n as u32).map(AtomicU32::new).collect();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut sweeps = 0u64;

    let mut passes = 0;
    let mut done = false;
    let mut snapshot = Vec::new();
    while passes < cfg.max_passes && !done {
        if let (Some(ranked), Some(restricted)) = (&ranked, &restricted) {
            order.shuffle(&mut rng);
            sweeps += 1;
            let candidates = |u: NodeId| &ranked.ranked(u)[..restricted[u.index()]];
            parallel_sweep(
                &labels,
                &order,
                candidates,
                weighted,
                sweep_seed(cfg.seed, sweeps),
            );
        }
        order.shuffle(&mut rng);
        sweeps += 1;
        parallel_sweep(
            &labels,
            &order,
            |u| g.adjacent(u),
            weighted,
            sweep_seed(cfg.seed, sweeps),
        );
        passes += 1;
        snapshot = labels.iter().map(|l| l.load(Ordering::Relaxed)).collect();
        done = converged(g, &snapshot, weighted);
    }
    Ok(Detection {
        partition: Partition::from_node_labels(&snapshot),
        labels: snapshot,
        passes,
        converged: done,
    })
}
