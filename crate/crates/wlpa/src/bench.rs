//! Runtime ladders over planted-partition graphs.
//!
//! For each size and thread count the bench times LPA, WLPA-LEB (betweenness
//! included) and the betweenness phase alone, all through the [`parallel`]
//! code paths on a pool of the given size. Each cell is the median of
//! `repeats` timings. A failing cell becomes a row with a non-`ok` status and
//! the ladder continues.
//!
//! CSV columns, in order: `n,algorithm,h,threads,wall_ms,passes,status`.
//! `algorithm` is `lpa`, `wlpa-leb` or `betweenness`; `h` is empty for LPA;
//! `passes` is empty for betweenness rows and `wall_ms`/`passes` are empty on
//! failure.

use std::fs::File;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use wlpa_core::{generate, Algorithm, Depth, GeneratorConfig, Graph, LpaConfig};

use crate::error::{Error, Result};
use crate::parallel;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub threads: Vec<usize>,
    /// Depths for WLPA-LEB rows.
    pub depths: Vec<u32>,
    /// Depths for betweenness-only rows.
    pub betweenness_depths: Vec<u32>,
    pub degree: f64,
    pub mu: f64,
    /// Nodes per planted group; every size must be a multiple of it.
    pub group_size: usize,
    pub seed: u64,
    pub max_passes: usize,
    pub repeats: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![10_000, 20_000, 40_000],
            threads: vec![1],
            depths: vec![2],
            betweenness_depths: vec![2, 3],
            degree: 15.0,
            mu: 0.4,
            group_size: 100,
            seed: 0,
            max_passes: LpaConfig::DEFAULT_MAX_PASSES,
            repeats: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub algorithm: String,
    pub h: Option<u32>,
    pub threads: usize,
    pub wall_ms: Option<f64>,
    pub passes: Option<usize>,
    pub status: String,
}

impl BenchConfig {
    pub fn generator(&self, n: usize) -> Result<GeneratorConfig> {
        if self.group_size == 0 || !n.is_multiple_of(self.group_size) {
            return Err(wlpa_core::Error::InfeasibleConfig(format!(
                "size {n} is not a multiple of the group size {}",
                self.group_size
            ))
            .into());
        }
        Ok(GeneratorConfig {
            groups: n / self.group_size,
            group_size: self.group_size,
            degree: self.degree,
            mu: self.mu,
            seed: self.seed,
        })
    }
}

enum Task {
    Propagation(Algorithm, u32),
    Betweenness(u32),
}

impl Task {
    fn name(&self) -> &'static str {
        match self {
            Task::Propagation(Algorithm::Lpa, _) => "lpa",
            Task::Propagation(Algorithm::WlpaLeb, _) => "wlpa-leb",
            Task::Betweenness(_) => "betweenness",
        }
    }

    fn depth(&self) -> Option<u32> {
        match *self {
            Task::Propagation(Algorithm::Lpa, _) => None,
            Task::Propagation(_, h) | Task::Betweenness(h) => Some(h),
        }
    }

    /// One timed execution: `(wall ms, passes)`.
    fn time(&self, g: &Graph, cfg: &BenchConfig) -> Result<(f64, Option<usize>)> {
        let start = Instant::now();
        let passes = match *self {
            Task::Propagation(algorithm, depth) => {
                let lpa_cfg = LpaConfig {
                    algorithm,
                    depth,
                    max_passes: cfg.max_passes,
                    ..LpaConfig::lpa(cfg.seed)
                };
                Some(parallel::detect(g, &lpa_cfg, None)?.passes)
            }
            Task::Betweenness(h) => {
                parallel::edge_betweenness(g, Depth::Hops(h))?;
                None
            }
        };
        Ok((start.elapsed().as_secs_f64() * 1e3, passes))
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

fn failure(n: usize, task: &Task, threads: usize, status: String) -> BenchRow {
    BenchRow {
        n,
        algorithm: task.name().into(),
        h: task.depth(),
        threads,
        wall_ms: None,
        passes: None,
        status,
    }
}

fn measure(g: &Graph, n: usize, task: &Task, threads: usize, cfg: &BenchConfig) -> BenchRow {
    let attempt = catch_unwind(AssertUnwindSafe(|| -> Result<(f64, Option<usize>)> {
        let pool = parallel::pool(threads)?;
        let mut times = Vec::with_capacity(cfg.repeats.max(1));
        let mut passes = None;
        for _ in 0..cfg.repeats.max(1) {
            let (ms, p) = pool.install(|| task.time(g, cfg))?;
            times.push(ms);
            passes = p;
        }
        Ok((median(&mut times), passes))
    }));
    match attempt {
        Ok(Ok((ms, passes))) => BenchRow {
            n,
            algorithm: task.name().into(),
            h: task.depth(),
            threads,
            wall_ms: Some(ms),
            passes,
            status: "ok".into(),
        },
        Ok(Err(e)) => failure(n, task, threads, format!("error: {e}")),
        Err(payload) => failure(
            n,
            task,
            threads,
            format!("panic: {}", panic_message(payload)),
        ),
    }
}

/// Runs the ladder, handing each row to `on_row` as soon as it is measured.
pub fn run_bench<F: FnMut(&BenchRow)>(cfg: &BenchConfig, mut on_row: F) -> Vec<BenchRow> {
    let mut tasks = vec![Task::Propagation(Algorithm::Lpa, LpaConfig::DEFAULT_DEPTH)];
    tasks.extend(
        cfg.depths
            .iter()
            .map(|&h| Task::Propagation(Algorithm::WlpaLeb, h)),
    );
    tasks.extend(cfg.betweenness_depths.iter().map(|&h| Task::Betweenness(h)));

    let mut rows = Vec::new();
    let mut emit = |row: BenchRow, rows: &mut Vec<BenchRow>| {
        on_row(&row);
        rows.push(row);
    };
    for &n in &cfg.sizes {
        let graph = cfg.generator(n).and_then(|g| Ok(generate(&g)?.graph));
        for &threads in &cfg.threads {
            for task in &tasks {
                let row = match &graph {
                    Ok(g) => measure(g, n, task, threads, cfg),
                    Err(e) => failure(n, task, threads, format!("error: {e}")),
                };
                emit(row, &mut rows);
            }
        }
    }
    rows
}

pub fn write_csv(path: &Path, rows: &[BenchRow]) -> Result<()> {
    let file = File::create(path).map_err(Error::io(path))?;
    let mut writer = csv::Writer::from_writer(file);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(Error::io(path))?;
    Ok(())
}
