//! Seeded multi-run detection and its reports.
//!
//! Run `i` of an experiment uses seed `seed + i` (wrapping), so any single run
//! can be reproduced alone with `--runs 1 --seed <seed + i>`. WLPA-LEB edge
//! scores do not depend on the seed and are computed once per experiment.
//! Runs are spread over the thread pool but each run is single-threaded and
//! deterministic, so reports do not depend on the thread count. Girvan-Newman
//! is deterministic and always runs once.
//!
//! `report.json` holds no wall-clock data; timings go to `timings.json` so
//! that repeated experiments produce byte-identical reports.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wlpa_core::propagation::wlpa_leb_with_scores;
use wlpa_core::{
    girvan_newman, lpa, modularity, nmi, quality_report, Algorithm, Dendrogram, Depth, EdgeScores,
    Graph, LpaConfig, Partition, QualityReport, DEFAULT_NODE_LIMIT,
};

use crate::error::{Error, Result};
use crate::io::{save_partition, write_text};
use crate::parallel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Lpa,
    WlpaLeb,
    Gn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub method: Method,
    pub runs: usize,
    pub seed: u64,
    pub max_passes: usize,
    pub depth: u32,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    pub weighted: Option<bool>,
    /// Girvan-Newman refuses graphs with more nodes.
    pub node_limit: usize,
}

impl RunConfig {
    pub const DEFAULT_RUNS: usize = 100;

    pub fn new(method: Method, seed: u64) -> Self {
        RunConfig {
            method,
            runs: Self::DEFAULT_RUNS,
            seed,
            max_passes: LpaConfig::DEFAULT_MAX_PASSES,
            depth: LpaConfig::DEFAULT_DEPTH,
            threads: 1,
            weighted: None,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }

    pub fn run_seed(&self, run: usize) -> u64 {
        self.seed.wrapping_add(run as u64)
    }

    pub fn lpa_config(&self, run: usize) -> Option<LpaConfig> {
        let algorithm = match self.method {
            Method::Lpa => Algorithm::Lpa,
            Method::WlpaLeb => Algorithm::WlpaLeb,
            Method::Gn => return None,
        };
        Some(LpaConfig {
            algorithm,
            depth: self.depth,
            max_passes: self.max_passes,
            seed: self.run_seed(run),
            weighted: self.weighted,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs < 1 {
            return Err(
                wlpa_core::Error::InvalidParameter("runs must be at least 1".into()).into(),
            );
        }
        if let Some(cfg) = self.lpa_config(0) {
            cfg.validate()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub seed: u64,
    pub modularity: f64,
    pub nmi: Option<f64>,
    pub communities: usize,
    /// Propagation passes; for Girvan-Newman, edges removed to reach the best level.
    pub passes: usize,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub best: f64,
    pub average: f64,
    pub worst: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let worst = values.iter().copied().fold(f64::INFINITY, f64::min);
        let average = values.iter().sum::<f64>() / values.len() as f64;
        // the mean of equal values can round just outside them
        Some(Summary {
            best,
            average: average.clamp(worst, best),
            worst,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommunityJson {
    pub id: usize,
    pub size: usize,
    pub internal_degree: usize,
    pub external_degree: usize,
    pub strong: bool,
    pub weak: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QualityJson {
    pub modularity: f64,
    pub community_count: usize,
    /// `[size, number of communities of that size]`, ascending by size.
    pub size_histogram: Vec<(usize, usize)>,
    pub communities: Vec<CommunityJson>,
}

impl From<QualityReport> for QualityJson {
    fn from(r: QualityReport) -> Self {
        QualityJson {
            modularity: r.modularity,
            community_count: r.community_count,
            size_histogram: r.size_histogram,
            communities: r
                .communities
                .iter()
                .enumerate()
                .map(|(id, f)| CommunityJson {
                    id,
                    size: f.size,
                    internal_degree: f.internal_degree,
                    external_degree: f.external_degree,
                    strong: f.strong,
                    weak: f.weak,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    #[serde(flatten)]
    pub quality: QualityJson,
    pub nmi: Option<f64>,
}

pub fn evaluate(g: &Graph, p: &Partition, truth: Option<&Partition>) -> Result<EvalReport> {
    let quality = quality_report(g, p)?.into();
    let nmi = truth.map(|t| nmi(p, t)).transpose()?;
    Ok(EvalReport { quality, nmi })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub algorithm: Method,
    pub nodes: usize,
    pub edges: usize,
    pub weighted: bool,
    pub runs: usize,
    pub seed: u64,
    pub max_passes: Option<usize>,
    pub depth: Option<u32>,
    pub threads: usize,
    pub best_run: usize,
    pub modularity: Summary,
    pub nmi: Option<Summary>,
    pub records: Vec<RunRecord>,
    pub best: QualityJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    /// Shared WLPA-LEB betweenness phase.
    pub betweenness_ms: Option<f64>,
    /// Per-run wall clock, indexed like `records`.
    pub run_ms: Vec<f64>,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelJson {
    pub communities: usize,
    pub modularity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DendrogramJson {
    /// Removed edges as `[u, v]` node labels, in removal order.
    pub removals: Vec<(String, String)>,
    /// `levels[i]` is the state after `i` removals.
    pub levels: Vec<LevelJson>,
    pub best_level: usize,
}

impl DendrogramJson {
    pub fn new(g: &Graph, d: &Dendrogram) -> Self {
        DendrogramJson {
            removals: d
                .removals
                .iter()
                .map(|&e| {
                    let edge = g.edge(e);
                    (g.label(edge.u).to_owned(), g.label(edge.v).to_owned())
                })
                .collect(),
            levels: d
                .levels
                .iter()
                .map(|l| LevelJson {
                    communities: l.community_count,
                    modularity: l.modularity,
                })
                .collect(),
            best_level: d.best_level,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Experiment {
    pub report: ExperimentReport,
    pub timings: Timings,
    pub best: Partition,
    pub dendrogram: Option<DendrogramJson>,
}

struct Outcome {
    record: RunRecord,
    partition: Partition,
    wall_ms: f64,
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn single_run(
    g: &Graph,
    truth: Option<&Partition>,
    cfg: &RunConfig,
    run: usize,
    scores: Option<&EdgeScores>,
) -> Result<Outcome> {
    let start = Instant::now();
    let lpa_cfg = cfg.lpa_config(run).expect("propagation method");
    let detection = match scores {
        Some(scores) => wlpa_leb_with_scores(g, &lpa_cfg, scores)?,
        None => lpa(g, &lpa_cfg)?,
    };
    let wall_ms = elapsed_ms(start);
    let partition = detection.partition;
    let record = RunRecord {
        run,
        seed: lpa_cfg.seed,
        modularity: modularity(g, &partition)?,
        nmi: truth.map(|t| nmi(&partition, t)).transpose()?,
        communities: partition.community_count(),
        passes: detection.passes,
        converged: detection.converged,
    };
    Ok(Outcome {
        record,
        partition,
        wall_ms,
    })
}

/// Runs the configured experiment; `truth` adds NMI to every run.
pub fn run_experiment(g: &Graph, truth: Option<&Partition>, cfg: &RunConfig) -> Result<Experiment> {
    cfg.validate()?;
    if g.edge_count() == 0 {
        return Err(wlpa_core::Error::NoEdges.into());
    }
    if let Some(t) = truth {
        if t.node_count() != g.node_count() {
            return Err(wlpa_core::Error::PartitionSize {
                expected: g.node_count(),
                found: t.node_count(),
            }
            .into());
        }
    }
    let start = Instant::now();
    let mut betweenness_ms = None;
    let mut dendrogram = None;
    let outcomes: Vec<Outcome> = match cfg.method {
        Method::Gn => {
            let (partition, d) = girvan_newman(g, cfg.node_limit)?;
            let record = RunRecord {
                run: 0,
                seed: cfg.seed,
                modularity: modularity(g, &partition)?,
                nmi: truth.map(|t| nmi(&partition, t)).transpose()?,
                communities: partition.community_count(),
                passes: d.best_level,
                converged: true,
            };
            dendrogram = Some(DendrogramJson::new(g, &d));
            vec![Outcome {
                record,
                partition,
                wall_ms: elapsed_ms(start),
            }]
        }
        Method::Lpa | Method::WlpaLeb => {
            parallel::pool(cfg.threads)?.install(|| -> Result<Vec<Outcome>> {
                let scores = match cfg.method {
                    Method::WlpaLeb => {
                        let t = Instant::now();
                        let s = parallel::edge_betweenness(g, Depth::Hops(cfg.depth))?;
                        betweenness_ms = Some(elapsed_ms(t));
                        Some(s)
                    }
                    _ => None,
                };
                (0..cfg.runs)
                    .into_par_iter()
                    .map(|run| single_run(g, truth, cfg, run, scores.as_ref()))
                    .collect()
            })?
        }
    };

    let qs: Vec<f64> = outcomes.iter().map(|o| o.record.modularity).collect();
    let best_run = qs
        .iter()
        .enumerate()
        .fold(0, |best, (i, &q)| if q > qs[best] { i } else { best });
    let nmis: Option<Vec<f64>> = outcomes.iter().map(|o| o.record.nmi).collect();
    let best = outcomes[best_run].partition.clone();
    let lpa_cfg = cfg.lpa_config(0);
    let report = ExperimentReport {
        algorithm: cfg.method,
        nodes: g.node_count(),
        edges: g.edge_count(),
        weighted: lpa_cfg.map_or(g.is_weighted(), |c| c.is_weighted(g)),
        runs: outcomes.len(),
        seed: cfg.seed,
        max_passes: lpa_cfg.map(|c| c.max_passes),
        depth: (cfg.method == Method::WlpaLeb).then_some(cfg.depth),
        threads: cfg.threads,
        best_run,
        modularity: Summary::of(&qs).expect("at least one run"),
        nmi: nmis.as_deref().and_then(Summary::of),
        best: quality_report(g, &best)?.into(),
        records: outcomes.iter().map(|o| o.record.clone()).collect(),
    };
    let timings = Timings {
        betweenness_ms,
        run_ms: outcomes.iter().map(|o| o.wall_ms).collect(),
        total_ms: elapsed_ms(start),
    };
    Ok(Experiment {
        report,
        timings,
        best,
        dendrogram,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Writes `partition.txt`, `report.json`, `timings.json` and, for
/// Girvan-Newman, `dendrogram.json` into `dir` (created if missing).
pub fn write_outputs(dir: &Path, g: &Graph, experiment: &Experiment) -> Result<()> {
    fs::create_dir_all(dir).map_err(Error::io(dir))?;
    save_partition(&dir.join("partition.txt"), &experiment.best, g)?;
    write_text(&dir.join("report.json"), &to_json(&experiment.report)?)?;
    write_text(&dir.join("timings.json"), &to_json(&experiment.timings)?)?;
    if let Some(d) = &experiment.dendrogram {
        write_text(&dir.join("dendrogram.json"), &to_json(d)?)?;
    }
    Ok(())
}
