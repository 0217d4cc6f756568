//! Label propagation: the classic algorithm and its betweenness-guided
//! variant (WLPA-LEB).
//!
//! Both start from unique labels and update nodes asynchronously in a freshly
//! shuffled order every pass; a node sees labels changed earlier in the same
//! pass. A node adopts the label with the largest score among a candidate set
//! of incident edges, where the score is the edge count (unweighted) or the
//! summed edge weight (weighted). Ties are broken uniformly at random. Only
//! neighbor labels are scored; a node's own label gets no implicit vote.
//!
//! WLPA-LEB computes h-depth local edge betweenness once, ranks every
//! adjacency list by it, and then each pass runs two sweeps: a restricted
//! sweep where candidates are the lowest-betweenness half of the incident
//! edges (see [`restricted_neighbor_set`]) and an unrestricted LPA sweep.
//!
//! Both algorithms stop once every node holds a maximum-score label among all
//! its neighbors ([`stop_criterion`]) or after `max_passes` passes.
//!
//! RNG consumption is fixed: one `ChaCha8` stream seeded from the config,
//! drawn for each sweep's shuffle and then for tie draws in visiting order.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::betweenness::{
    local_edge_betweenness, sorted_neighbor_order, EdgeScores, RankedAdjacency,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Neighbor, NodeId};
use crate::partition::Partition;

/// Relative slack when comparing weighted label scores, so that sums of the
/// same weights in a different order still count as ties.
const WEIGHT_TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Lpa,
    WlpaLeb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LpaConfig {
    pub algorithm: Algorithm,
    /// Betweenness depth h (WLPA-LEB only).
    pub depth: u32,
    pub max_passes: usize,
    pub seed: u64,
    /// `None` scores by weight exactly when the graph is weighted.
    pub weighted: Option<bool>,
}

impl LpaConfig {
    pub const DEFAULT_MAX_PASSES: usize = 100;
    pub const DEFAULT_DEPTH: u32 = 2;

    pub fn lpa(seed: u64) -> Self {
        LpaConfig {
            algorithm: Algorithm::Lpa,
            depth: Self::DEFAULT_DEPTH,
            max_passes: Self::DEFAULT_MAX_PASSES,
            seed,
            weighted: None,
        }
    }

    pub fn wlpa_leb(seed: u64) -> Self {
        LpaConfig {
            algorithm: Algorithm::WlpaLeb,
            ..Self::lpa(seed)
        }
    }

    /// WLPA-LEB capped at four passes.
    pub fn wlpa_leb_four_pass(seed: u64) -> Self {
        LpaConfig {
            max_passes: 4,
            ..Self::wlpa_leb(seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_passes < 1 {
            return Err(Error::InvalidParameter(
                "max_passes must be at least 1".into(),
            ));
        }
        if self.depth < 1 {
            return Err(Error::InvalidParameter(
                "betweenness depth must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn is_weighted(&self, g: &Graph) -> bool {
        self.weighted.unwrap_or_else(|| g.is_weighted())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detection {
    pub partition: Partition,
    /// Raw final labels; each is the id of the node that started with it.
    pub labels: Vec<u32>,
    /// Passes executed (for WLPA-LEB one pass is a restricted plus a full sweep).
    pub passes: usize,
    /// Whether the stop criterion held on return; `false` means the pass cap hit first.
    pub converged: bool,
}

impl Detection {
    fn empty() -> Self {
        Detection {
            partition: Partition::singletons(0),
            labels: Vec::new(),
            passes: 0,
            converged: true,
        }
    }
}

/// Per-label score accumulator sized to the label space (labels are node ids).
#[derive(Clone, Debug)]
pub struct LabelScratch {
    scores: Vec<f64>,
    touched: Vec<u32>,
    tied: Vec<u32>,
}

impl LabelScratch {
    pub fn new(node_count: usize) -> Self {
        LabelScratch {
            scores: alloc::vec![0.0; node_count],
            touched: Vec::new(),
            tied: Vec::new(),
        }
    }

    /// Scores candidate labels; returns the best score. Labels are recorded
    /// in `touched` in first-seen order.
    fn tally<L>(&mut self, candidates: &[Neighbor], label_of: &L, weighted: bool) -> f64
    where
        L: Fn(NodeId) -> u32,
    {
        let mut best = 0.0f64;
        for nb in candidates {
            let l = label_of(nb.node);
            let slot = &mut self.scores[l as usize];
            if *slot == 0.0 {
                self.touched.push(l);
            }
            *slot += if weighted { nb.weight } else { 1.0 };
            best = best.max(*slot);
        }
        best
    }

    fn reset(&mut self) {
        for &l in &self.touched {
            self.scores[l as usize] = 0.0;
        }
        self.touched.clear();
    }
}

#[inline]
fn tie_floor(best: f64, weighted: bool) -> f64 {
    if weighted {
        best - WEIGHT_TIE_TOLERANCE * best.max(1.0)
    } else {
        best
    }
}

/// The highest-scoring label among `candidates`, ties drawn uniformly from
/// `rng`. An empty candidate set leaves the node with `current`. The RNG is
/// consumed only when there is a tie.
pub fn most_frequent_label<L, R>(
    current: u32,
    candidates: &[Neighbor],
    label_of: L,
    weighted: bool,
    scratch: &mut LabelScratch,
    rng: &mut R,
) -> u32
where
    L: Fn(NodeId) -> u32,
    R: Rng + ?Sized,
{
    if candidates.is_empty() {
        return current;
    }
    let best = scratch.tally(candidates, &label_of, weighted);
    let floor = tie_floor(best, weighted);
    scratch.tied.clear();
    for &l in &scratch.touched {
        if scratch.scores[l as usize] >= floor {
            scratch.tied.push(l);
        }
    }
    let chosen = match scratch.tied.len() {
        1 => scratch.tied[0],
        k => scratch.tied[rng.random_range(0..k)],
    };
    scratch.reset();
    chosen
}

/// Candidate edges for the restricted sweep: the prefix of `ranked` (ascending
/// betweenness) covering half of the node's neighborhood.
///
/// Unweighted, that is the first `ceil(d/2)` edges. Weighted, it is the longest
/// prefix whose cumulative weight stays within half the node's strength, but
/// never fewer than one edge.
pub fn restricted_neighbor_set(ranked: &[Neighbor], weighted: bool) -> &[Neighbor] {
    if ranked.is_empty() {
        return ranked;
    }
    if !weighted {
        return &ranked[..ranked.len().div_ceil(2)];
    }
    let strength: f64 = ranked.iter().map(|nb| nb.weight).sum();
    let half = 0.5 * strength;
    let limit = half + WEIGHT_TIE_TOLERANCE * half.max(1.0);
    let mut cumulative = 0.0;
    let mut len = 0;
    for nb in ranked {
        cumulative += nb.weight;
        if cumulative > limit {
            break;
        }
        len += 1;
    }
    &ranked[..len.max(1)]
}

/// True when every node holds a label with maximum score among all of its
/// neighbors. Isolated nodes always qualify.
pub fn stop_criterion<L>(g: &Graph, label_of: L, weighted: bool) -> bool
where
    L: Fn(NodeId) -> u32,
{
    let mut scratch = LabelScratch::new(g.node_count());
    g.nodes()
        .all(|u| holds_best_label(g, u, &label_of, weighted, &mut scratch))
}

/// Per-node check behind [`stop_criterion`].
pub fn holds_best_label<L>(
    g: &Graph,
    u: NodeId,
    label_of: &L,
    weighted: bool,
    scratch: &mut LabelScratch,
) -> bool
where
    L: Fn(NodeId) -> u32,
{
    let adjacent = g.adjacent(u);
    if adjacent.is_empty() {
        return true;
    }
    let best = scratch.tally(adjacent, label_of, weighted);
    let own = scratch.scores[label_of(u) as usize];
    scratch.reset();
    own >= tie_floor(best, weighted)
}

/// Runs one asynchronous sweep in a fresh random order.
fn sweep<'a, C, R>(
    labels: &mut [u32],
    order: &mut [u32],
    candidates: C,
    weighted: bool,
    scratch: &mut LabelScratch,
    rng: &mut R,
) where
    C: Fn(NodeId) -> &'a [Neighbor],
    R: Rng + ?Sized,
{
    order.shuffle(rng);
    for &u in order.iter() {
        let node = NodeId(u);
        let current = labels[u as usize];
        let next = {
            let view: &[u32] = labels;
            most_frequent_label(
                current,
                candidates(node),
                |v| view[v.index()],
                weighted,
                scratch,
                rng,
            )
        };
        labels[u as usize] = next;
    }
}

/// Classic label propagation.
pub fn lpa(g: &Graph, cfg: &LpaConfig) -> Result<Detection> {
    cfg.validate()?;
    if g.node_count() == 0 {
        return Ok(Detection::empty());
    }
    let weighted = cfg.is_weighted(g);
    let mut rng = cfg.rng();
    let mut labels: Vec<u32> = (0..g.node_count() as u32).collect();
    let mut order = labels.clone();
    let mut scratch = LabelScratch::new(g.node_count());

    let mut passes = 0;
    let mut converged = false;
    while passes < cfg.max_passes && !converged {
        sweep(
            &mut labels,
            &mut order,
            |u| g.adjacent(u),
            weighted,
            &mut scratch,
            &mut rng,
        );
        passes += 1;
        converged = g.nodes().all(|u| {
            holds_best_label(g, u, &|v: NodeId| labels[v.index()], weighted, &mut scratch)
        });
    }
    Ok(Detection {
        partition: Partition::from_node_labels(&labels),
        labels,
        passes,
        converged,
    })
}

/// WLPA-LEB, computing the h-depth local edge betweenness itself.
pub fn wlpa_leb(g: &Graph, cfg: &LpaConfig) -> Result<Detection> {
    cfg.validate()?;
    if g.node_count() == 0 {
        return Ok(Detection::empty());
    }
    let scores = local_edge_betweenness(g, cfg.depth)?;
    wlpa_leb_with_scores(g, cfg, &scores)
}

/// WLPA-LEB over precomputed edge scores (e.g. computed in parallel).
pub fn wlpa_leb_with_scores(g: &Graph, cfg: &LpaConfig, scores: &EdgeScores) -> Result<Detection> {
    cfg.validate()?;
    if g.node_count() == 0 {
        return Ok(Detection::empty());
    }
    let ranked = sorted_neighbor_order(g, scores)?;
    Ok(wlpa_leb_ranked(g, cfg, &ranked))
}

/// Lengths of each node's restricted candidate prefix; fixed for a run since
/// rankings and weights do not change.
pub fn restricted_lengths(g: &Graph, ranked: &RankedAdjacency, weighted: bool) -> Vec<usize> {
    g.nodes()
        .map(|u| restricted_neighbor_set(ranked.ranked(u), weighted).len())
        .collect()
}

fn wlpa_leb_ranked(g: &Graph, cfg: &LpaConfig, ranked: &RankedAdjacency) -> Detection {
    let weighted = cfg.is_weighted(g);
    let restricted = restricted_lengths(g, ranked, weighted);
    let mut rng = cfg.rng();
    let mut labels: Vec<u32> = (0..g.node_count() as u32).collect();
    let mut order = labels.clone();
    let mut scratch = LabelScratch::new(g.node_count());

    let mut passes = 0;
    let mut converged = false;
    while passes < cfg.max_passes && !converged {
        sweep(
            &mut labels,
            &mut order,
            |u| &ranked.ranked(u)[..restricted[u.index()]],
            weighted,
            &mut scratch,
            &mut rng,
        );
        sweep(
            &mut labels,
            &mut order,
            |u| g.adjacent(u),
            weighted,
            &mut scratch,
            &mut rng,
        );
        passes += 1;
        converged = g.nodes().all(|u| {
            holds_best_label(g, u, &|v: NodeId| labels[v.index()], weighted, &mut scratch)
        });
    }
    Detection {
        partition: Partition::from_node_labels(&labels),
        labels,
        passes,
        converged,
    }
}

/// Dispatches on `cfg.algorithm`.
pub fn detect(g: &Graph, cfg: &LpaConfig) -> Result<Detection> {
    match cfg.algorithm {
        Algorithm::Lpa => lpa(g, cfg),
        Algorithm::WlpaLeb => wlpa_leb(g, cfg),
    }
}
