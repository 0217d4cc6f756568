use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use wlpa::bench::{run_bench, write_csv, BenchConfig};
use wlpa::experiment::{evaluate, run_experiment, to_json, write_outputs, Method, RunConfig};
use wlpa::io::{betweenness_dump, load_partition, read_graph, write_graph, write_text};
use wlpa::parallel;
use wlpa_core::{
    generate, generate_weighted, GeneratorConfig, Graph, LoadOptions, LpaConfig, DEFAULT_NODE_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "wlpa",
    version,
    about = "Label-propagation community detection and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded detections and write the best partition and a report.
    Detect(DetectArgs),
    /// Score a partition, optionally against a ground truth.
    Eval(EvalArgs),
    /// Write a planted-partition graph and its ground truth.
    Generate(GenerateArgs),
    /// Time the algorithms over a ladder of sizes and thread counts.
    Bench(BenchArgs),
    /// Dump local edge betweenness.
    Betweenness(BetweennessArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Lpa,
    WlpaLeb,
    Gn,
}

impl From<Algo> for Method {
    fn from(a: Algo) -> Method {
        match a {
            Algo::Lpa => Method::Lpa,
            Algo::WlpaLeb => Method::WlpaLeb,
            Algo::Gn => Method::Gn,
        }
    }
}

#[derive(Args)]
struct GraphArgs {
    /// Edge list: `u v [w]` per line.
    #[arg(long)]
    graph: PathBuf,
    /// Input lists arcs; direction is dropped and reciprocal arcs merged.
    #[arg(long)]
    directed: bool,
}

impl GraphArgs {
    fn load(&self) -> Result<Graph> {
        let (g, report) = read_graph(
            &self.graph,
            LoadOptions {
                directed: self.directed,
            },
        )?;
        if report.self_loops_dropped > 0 || report.parallel_edges_merged > 0 {
            eprintln!(
                "{}: dropped {} self-loops, merged {} parallel edges",
                self.graph.display(),
                report.self_loops_dropped,
                report.parallel_edges_merged
            );
        }
        Ok(g)
    }
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[command(flatten)]
    graph: GraphArgs,
    /// Score labels by edge weight even if all weights are 1.
    #[arg(long)]
    weighted: bool,
    #[arg(long, default_value_t = RunConfig::DEFAULT_RUNS)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = LpaConfig::DEFAULT_MAX_PASSES)]
    max_passes: usize,
    /// Betweenness depth h.
    #[arg(long, default_value_t = LpaConfig::DEFAULT_DEPTH)]
    depth: u32,
    /// Worker threads for independent runs (0 = all cores).
    #[arg(long, env = "WLPA_THREADS", default_value_t = 1)]
    threads: usize,
    /// Ground-truth partition; adds NMI to every run.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Girvan-Newman refuses larger graphs.
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    partition: PathBuf,
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// 4 groups of 32 nodes, expected degree 16.
    Gn,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum, conflicts_with_all = ["groups", "size", "degree"])]
    preset: Option<Preset>,
    #[arg(long, required_unless_present = "preset")]
    groups: Option<usize>,
    #[arg(long, required_unless_present = "preset")]
    size: Option<usize>,
    #[arg(long, required_unless_present = "preset")]
    degree: Option<f64>,
    #[arg(long)]
    mu: f64,
    /// Fraction of strength on cross-group edges; makes the graph weighted.
    #[arg(long)]
    wmu: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',', default_values_t = [10_000, 20_000, 40_000])]
    sizes: Vec<usize>,
    /// Comma-separated thread counts.
    #[arg(long, value_delimiter = ',', default_values_t = [1])]
    threads: Vec<usize>,
    /// WLPA-LEB depths.
    #[arg(long, value_delimiter = ',', default_values_t = [2])]
    depths: Vec<u32>,
    /// Depths for betweenness-only rows.
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3])]
    betweenness_depths: Vec<u32>,
    #[arg(long, default_value_t = 15.0)]
    degree: f64,
    #[arg(long, default_value_t = 0.4)]
    mu: f64,
    #[arg(long, default_value_t = 100)]
    group_size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BetweennessArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = LpaConfig::DEFAULT_DEPTH)]
    depth: u32,
    #[arg(long, env = "WLPA_THREADS", default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    out: PathBuf,
}

fn detect(args: DetectArgs) -> Result<()> {
    let g = args.graph.load()?;
    let truth = args
        .truth
        .as_deref()
        .map(|t| load_partition(t, &g))
        .transpose()?;
    let cfg = RunConfig {
        method: args.algo.into(),
        runs: args.runs,
        seed: args.seed,
        max_passes: args.max_passes,
        depth: args.depth,
        threads: args.threads,
        weighted: args.weighted.then_some(true),
        node_limit: args.node_limit,
    };
    if cfg.method == Method::Gn && cfg.runs > 1 {
        eprintln!("gn is deterministic; running once");
    }
    let experiment = run_experiment(&g, truth.as_ref(), &cfg)?;
    write_outputs(&args.out, &g, &experiment)?;
    let r = &experiment.report;
    println!(
        "best {:.4}  average {:.4}  worst {:.4}  ({} runs, best run {}, {} communities)",
        r.modularity.best,
        r.modularity.average,
        r.modularity.worst,
        r.runs,
        r.best_run,
        r.best.community_count
    );
    Ok(())
}

fn eval(args: EvalArgs) -> Result<()> {
    let g = args.graph.load()?;
    let p = load_partition(&args.partition, &g)?;
    let truth = args
        .truth
        .as_deref()
        .map(|t| load_partition(t, &g))
        .transpose()?;
    print!("{}", to_json(&evaluate(&g, &p, truth.as_ref())?)?);
    Ok(())
}

fn generator_config(args: &GenerateArgs) -> Result<GeneratorConfig> {
    Ok(match args.preset {
        Some(Preset::Gn) => GeneratorConfig::gn_preset(args.mu, args.seed),
        None => match (args.groups, args.size, args.degree) {
            (Some(groups), Some(group_size), Some(degree)) => GeneratorConfig {
                groups,
                group_size,
                degree,
                mu: args.mu,
                seed: args.seed,
            },
            _ => bail!("--groups, --size and --degree are required without --preset"),
        },
    })
}

fn generate_cmd(args: GenerateArgs) -> Result<()> {
    let cfg = generator_config(&args)?;
    let planted = match args.wmu {
        Some(wmu) => generate_weighted(&cfg, wmu)?,
        None => generate(&cfg)?,
    };
    if !planted.community_condition_holds() {
        eprintln!(
            "warning: P_in = {:.6} < P_out = {:.6}; groups are sparser inside than between",
            planted.p_in, planted.p_out
        );
    }
    fs::create_dir_all(&args.out).with_context(|| args.out.display().to_string())?;
    write_graph(&args.out.join("graph.txt"), &planted.graph)?;
    let g = &planted.graph;
    let isolated = g.nodes().filter(|&u| g.degree(u) == 0).count();
    if isolated > 0 {
        eprintln!("{isolated} isolated nodes cannot appear in an edge list; left out of truth.txt");
    }
    // truth lines follow node order, so they can be filtered by line index
    let truth: String = planted
        .truth
        .to_text(g)?
        .lines()
        .zip(g.nodes())
        .filter(|&(_, u)| g.degree(u) > 0)
        .map(|(line, _)| format!("{line}\n"))
        .collect();
    write_text(&args.out.join("truth.txt"), &truth)?;
    println!(
        "{} nodes, {} edges, P_in {:.6}, P_out {:.6}",
        planted.graph.node_count(),
        planted.graph.edge_count(),
        planted.p_in,
        planted.p_out
    );
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let cfg = BenchConfig {
        sizes: args.sizes,
        threads: args.threads,
        depths: args.depths,
        betweenness_depths: args.betweenness_depths,
        degree: args.degree,
        mu: args.mu,
        group_size: args.group_size,
        seed: args.seed,
        repeats: args.repeats,
        ..BenchConfig::default()
    };
    let rows = run_bench(&cfg, |row| {
        let ms = row.wall_ms.map_or("-".into(), |ms| format!("{ms:.1} ms"));
        eprintln!(
            "n={} {} h={:?} threads={} {} {}",
            row.n, row.algorithm, row.h, row.threads, ms, row.status
        );
    });
    write_csv(&args.out, &rows)?;
    let failed = rows.iter().filter(|r| r.status != "ok").count();
    if failed > 0 {
        bail!(
            "{failed} of {} bench rows failed (see {})",
            rows.len(),
            args.out.display()
        );
    }
    Ok(())
}

fn betweenness(args: BetweennessArgs) -> Result<()> {
    let g = args.graph.load()?;
    let scores = parallel::local_edge_betweenness(&g, args.depth, args.threads)?;
    Ok(write_text(&args.out, &betweenness_dump(&g, &scores)?)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Detect(a) => detect(a),
        Command::Eval(a) => eval(a),
        Command::Generate(a) => generate_cmd(a),
        Command::Bench(a) => bench(a),
        Command::Betweenness(a) => betweenness(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
