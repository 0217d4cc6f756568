//! Planted l-partition benchmark graphs (the GN model).
//!
//! `g` groups of `s` nodes each; node `i` belongs to group `i / s`. Every
//! unordered pair is an independent coin: same-group pairs connect with
//! probability `P_in = k(1 - mu) / (s - 1)`, cross-group pairs with
//! `P_out = k mu / (n - s)`, which gives expected degree `k` with an
//! expected fraction `mu` of it leaving the group.
//!
//! Coins are not flipped one by one: for each node the candidate partners
//! above it form two contiguous id ranges (rest of its group, later groups),
//! and successes are located by geometric skipping, which has the same
//! distribution as flipping every coin but costs time proportional to the
//! number of edges.
//!
//! The weighted variant keeps the topology and assigns intra-group weight
//! `(1 - wmu) / (1 - mu)` and cross-group weight `wmu / mu`, so a node's
//! expected strength stays `k` and an expected fraction `wmu` of it sits on
//! cross-group edges. Cross weights are floored at [`MIN_WEIGHT`].

use alloc::format;
use alloc::vec::Vec;

use libm::{floor, log};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

pub const MIN_WEIGHT: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub groups: usize,
    pub group_size: usize,
    /// Expected degree k.
    pub degree: f64,
    /// Expected fraction of a node's edges that leave its group.
    pub mu: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    /// 128 nodes in 4 groups of 32, expected degree 16.
    pub fn gn_preset(mu: f64, seed: u64) -> Self {
        GeneratorConfig {
            groups: 4,
            group_size: 32,
            degree: 16.0,
            mu,
            seed,
        }
    }

    pub fn node_count(&self) -> usize {
        self.groups * self.group_size
    }

    /// `(P_in, P_out)`, validating the configuration.
    pub fn probabilities(&self) -> Result<(f64, f64)> {
        let (g, s) = (self.groups, self.group_size);
        if g < 2 || s < 2 {
            return Err(Error::InfeasibleConfig(format!(
                "need at least 2 groups of at least 2 nodes, got {g} x {s}"
            )));
        }
        if !(0.0..1.0).contains(&self.mu) {
            return Err(Error::InfeasibleConfig(format!(
                "mu = {} outside [0, 1)",
                self.mu
            )));
        }
        let n = self.node_count();
        if !(self.degree >= 0.0 && self.degree < n as f64) {
            return Err(Error::InfeasibleConfig(format!(
                "expected degree {} outside [0, n = {n})",
                self.degree
            )));
        }
        let p_in = self.degree * (1.0 - self.mu) / (s - 1) as f64;
        let p_out = self.degree * self.mu / (n - s) as f64;
        if p_in > 1.0 {
            return Err(Error::InfeasibleConfig(format!("P_in = {p_in} exceeds 1")));
        }
        if p_out > 1.0 {
            return Err(Error::InfeasibleConfig(format!(
                "P_out = {p_out} exceeds 1"
            )));
        }
        Ok((p_in, p_out))
    }
}

#[derive(Clone, Debug)]
pub struct PlantedGraph {
    pub graph: Graph,
    pub truth: Partition,
    pub p_in: f64,
    pub p_out: f64,
}

impl PlantedGraph {
    /// `P_in >= P_out`: groups are denser inside than between. Callers
    /// should warn when this fails.
    pub fn community_condition_holds(&self) -> bool {
        self.p_in >= self.p_out
    }
}

/// Calls `emit` for each success among Bernoulli(`p`) trials on `lo..hi`.
fn sample_range<R: Rng, F: FnMut(usize)>(rng: &mut R, lo: usize, hi: usize, p: f64, mut emit: F) {
    if p <= 0.0 || lo >= hi {
        return;
    }
    if p >= 1.0 {
        (lo..hi).for_each(emit);
        return;
    }
    let log_miss = log(1.0 - p);
    let mut next = lo;
    loop {
        let r: f64 = rng.random();
        let skip = floor(log(1.0 - r) / log_miss);
        if skip >= (hi - next) as f64 {
            return;
        }
        next += skip as usize;
        emit(next);
        next += 1;
    }
}

fn planted_edges(cfg: &GeneratorConfig, p_in: f64, p_out: f64) -> Vec<(u32, u32, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (n, s) = (cfg.node_count(), cfg.group_size);
    let mut edges = Vec::new();
    for i in 0..n {
        let group_end = (i / s + 1) * s;
        sample_range(&mut rng, i + 1, group_end, p_in, |j| {
            edges.push((i as u32, j as u32, true))
        });
        sample_range(&mut rng, group_end, n, p_out, |j| {
            edges.push((i as u32, j as u32, false))
        });
    }
    edges
}

fn truth(cfg: &GeneratorConfig) -> Partition {
    let labels: Vec<usize> = (0..cfg.node_count()).map(|i| i / cfg.group_size).collect();
    Partition::from_labels(&labels)
}

/// Unweighted planted partition graph and its ground truth.
pub fn generate(cfg: &GeneratorConfig) -> Result<PlantedGraph> {
    let (p_in, p_out) = cfg.probabilities()?;
    let edges = planted_edges(cfg, p_in, p_out);
    let graph = Graph::from_edges(
        cfg.node_count(),
        edges.into_iter().map(|(u, v, _)| (u, v, 1.0)),
    )?;
    Ok(PlantedGraph {
        graph,
        truth: truth(cfg),
        p_in,
        p_out,
    })
}

/// Same topology as [`generate`] for the same config, with weights set so
/// that an expected fraction `wmu` of each node's strength crosses groups.
pub fn generate_weighted(cfg: &GeneratorConfig, wmu: f64) -> Result<PlantedGraph> {
    if !(0.0..1.0).contains(&wmu) {
        return Err(Error::InfeasibleConfig(format!(
            "wmu = {wmu} outside [0, 1)"
        )));
    }
    let (p_in, p_out) = cfg.probabilities()?;
    let (w_in, w_out) = if cfg.mu > 0.0 {
        ((1.0 - wmu) / (1.0 - cfg.mu), (wmu / cfg.mu).max(MIN_WEIGHT))
    } else {
        // no cross-group edges can exist
        (1.0, MIN_WEIGHT)
    };
    let edges = planted_edges(cfg, p_in, p_out);
    let graph = Graph::from_edges(
        cfg.node_count(),
        edges
            .into_iter()
            .map(|(u, v, inside)| (u, v, if inside { w_in } else { w_out })),
    )?;
    Ok(PlantedGraph {
        graph,
        truth: truth(cfg),
        p_in,
        p_out,
    })
}
