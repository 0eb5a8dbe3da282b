//! Command-line surface.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hopset_core::{Family, GeneratorSpec, PairSampling, ScaleRange};
use serde::Serialize;

use crate::bench::run_bench;
use crate::config::{Algorithm, ExperimentConfig, GraphInput, ModeName, OutputPaths};
use crate::experiment::{run_experiment, ExperimentOutcome};

#[derive(Debug, Parser)]
#[command(name = "hopset", version, about = "Build and verify hopsets of directed graphs", args_override_self = true)]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Defaults file, JSON object or `key = value` lines named like the
    /// flags. Flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Build a hopset and verify it.
    Build(RunArgs),
    /// Verify an existing hopset file against a graph.
    Verify(VerifyArgs),
    /// Sweep sizes and seeds; write one CSV row per run.
    Bench(BenchArgs),
    /// Build with per-frame instrumentation and write the trace as JSON.
    Trace(RunArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge-list file; conflicts with --family.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub max_weight: u64,
    /// Master seed for generation, construction and pair sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl GraphArgs {
    fn input(&self) -> Result<GraphInput> {
        match (&self.graph, self.family) {
            (Some(path), _) => Ok(GraphInput::File(path.clone())),
            (None, Some(family)) => {
                let Some(n) = self.n else { bail!("--family needs --n") };
                let mut spec = GeneratorSpec::new(family, n).max_weight(self.max_weight).seed(self.seed);
                spec.m = self.m;
                Ok(GraphInput::Generate(spec))
            }
            (None, None) => bail!("give either --graph or --family with --n"),
        }
    }
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, value_enum, default_value_t = ModeName::Practical)]
    pub mode: ModeName,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    /// Default: 2 in practical mode, 8 in paper mode.
    #[arg(long)]
    pub lambda: Option<u32>,
    /// Outer repetitions (sweeps for the parallel algorithm).
    #[arg(long)]
    pub repetitions: Option<u32>,
    /// auto, full, or lo:hi.
    #[arg(long, default_value = "auto")]
    pub scale_range: ScaleRange,
    /// Practical L.
    #[arg(long)]
    pub shortcut_depth: Option<u32>,
    /// Practical k^c.
    #[arg(long)]
    pub k_pow_c: Option<f64>,
    #[arg(long)]
    pub rho_min: Option<u64>,
    #[arg(long)]
    pub rho_max: Option<u64>,
    #[arg(long)]
    pub interval_width: Option<u64>,
    #[arg(long)]
    pub interval_count: Option<u64>,
    /// Parallel algorithm hop target.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Parallel algorithm rounding precision.
    #[arg(long)]
    pub delta: Option<f64>,
}

impl ParamArgs {
    fn apply(&self, config: &mut ExperimentConfig) {
        let p = &mut config.params;
        p.mode = self.mode;
        p.epsilon = self.epsilon;
        p.k = self.k;
        p.lambda = self.lambda;
        p.repetitions = self.repetitions;
        p.scale_range = self.scale_range;
        let c = &mut p.practical;
        macro_rules! set {
            ($($field:ident),*) => { $(if let Some(v) = self.$field { c.$field = v; })* };
        }
        set!(shortcut_depth, k_pow_c, rho_min, rho_max, interval_width, interval_count);
        p.parallel.beta = self.beta;
        p.parallel.delta = self.delta;
    }
}

/// `none` disables verification; anything else is a pair-sampling strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Off,
    On(PairSampling),
}

impl std::str::FromStr for VerifyMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "none" {
            Ok(VerifyMode::Off)
        } else {
            s.parse().map(VerifyMode::On)
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Algorithm::Unweighted)]
    pub algorithm: Algorithm,
    /// build: hopset edge list (sidecar at <out>.json). trace: trace JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON report.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// CSV of per-level counters.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// CSV of checked pairs.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// auto, all-pairs, sampled:<sources> or none. Default: auto for build,
    /// none for trace.
    #[arg(long)]
    pub verify: Option<VerifyMode>,
    /// Hop budget for verification.
    #[arg(long)]
    pub verify_beta: Option<usize>,
    /// Stretch allowed by verification.
    #[arg(long)]
    pub verify_epsilon: Option<f64>,
    /// Also report the smallest sufficient hop budget.
    #[arg(long)]
    pub measure_hopbound: bool,
}

impl RunArgs {
    fn config(&self, tracing: bool) -> Result<ExperimentConfig> {
        let mut config = ExperimentConfig::new(self.graph.input()?);
        config.seed = self.graph.seed;
        config.algorithm = self.algorithm;
        self.params.apply(&mut config);
        let default_verify = if tracing { VerifyMode::Off } else { VerifyMode::On(PairSampling::Auto) };
        match self.verify.unwrap_or(default_verify) {
            VerifyMode::Off => config.verification.enabled = false,
            VerifyMode::On(s) => config.verification.sampling = s,
        }
        config.verification.beta = self.verify_beta;
        config.verification.epsilon = self.verify_epsilon;
        config.verification.measure_hopbound = self.measure_hopbound;
        config.outputs = OutputPaths {
            hopset: if tracing { None } else { self.out.clone() },
            report: self.report.clone(),
            stats: self.stats.clone(),
            pairs: self.pairs.clone(),
            trace: if tracing {
                Some(self.out.clone().unwrap_or_else(|| PathBuf::from("trace.json")))
            } else {
                None
            },
        };
        Ok(config)
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Hopset edge list to check.
    #[arg(long)]
    pub hopset: PathBuf,
    #[arg(long, default_value = "auto")]
    pub verify: PairSampling,
    /// Hop budget (default n − 1).
    #[arg(long)]
    pub beta: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    #[arg(long)]
    pub measure_hopbound: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub max_weight: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub family: Family,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Seeds 0..seeds per size.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value_t = 1)]
    pub max_weight: u64,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Algorithm::Unweighted)]
    pub algorithm: Algorithm,
    #[arg(long, default_value = "none")]
    pub verify: VerifyMode,
    #[arg(long)]
    pub measure_hopbound: bool,
    /// CSV destination (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Machine-readable outcome printed on stdout.
#[derive(Serialize)]
struct Summary<'a> {
    status: &'a str,
    hopset_edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_ratio: Option<Option<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    validity_violations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound_violations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    measured_hopbound: Option<usize>,
}

fn summarize(outcome: &ExperimentOutcome) -> String {
    let r = &outcome.report;
    let v = r.verification.as_ref();
    let s = Summary {
        status: if r.passed { "passed" } else { "failed" },
        hopset_edges: outcome.hopset.len(),
        max_ratio: v.map(|v| v.max_ratio),
        validity_violations: v.map(|v| v.validity_violations.len()),
        bound_violations: v.map(|v| v.bound_violations.len()),
        measured_hopbound: r.measured_hopbound,
    };
    serde_json::to_string(&s).expect("summary serializes")
}

/// Exit status: 0 passed, 1 verification failed, 2 error.
pub fn run(cli: Cli) -> Result<i32> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("configuring threads")?;
    }
    match cli.command {
        Command::Gen(a) => {
            let mut spec = GeneratorSpec::new(a.family, a.n).max_weight(a.max_weight).seed(a.seed);
            spec.m = a.m;
            let g = spec.generate()?;
            hopset_core::io::save_graph(&a.out, &g).with_context(|| format!("writing {}", a.out.display()))?;
            Ok(0)
        }
        Command::Build(a) => finish(run_experiment(&a.config(false)?)?),
        Command::Trace(a) => finish(run_experiment(&a.config(true)?)?),
        Command::Verify(a) => {
            let mut config = ExperimentConfig::new(a.graph.input()?);
            config.seed = a.graph.seed;
            config.hopset_input = Some(a.hopset);
            config.params.epsilon = a.epsilon;
            config.verification.sampling = a.verify;
            config.verification.beta = a.beta;
            config.verification.epsilon = Some(a.epsilon);
            config.verification.measure_hopbound = a.measure_hopbound;
            config.outputs.report = a.report;
            config.outputs.pairs = a.pairs;
            finish(run_experiment(&config)?)
        }
        Command::Bench(a) => {
            let mut template = ExperimentConfig::new(GraphInput::Generate(GeneratorSpec::new(a.family, 2)));
            template.algorithm = a.algorithm;
            a.params.apply(&mut template);
            match a.verify {
                VerifyMode::Off => template.verification.enabled = false,
                VerifyMode::On(s) => template.verification.sampling = s,
            }
            template.verification.measure_hopbound = a.measure_hopbound;
            let rows = run_bench(&template, a.family, a.max_weight, &a.sizes, a.seeds)?;
            let sink: Box<dyn Write> = match &a.out {
                Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
                None => Box::new(std::io::stdout()),
            };
            let mut w = csv::Writer::from_writer(sink);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
            Ok(if w.into_inner().is_ok() { 0 } else { 2 })
        }
    }
}

fn finish(outcome: ExperimentOutcome) -> Result<i32> {
    println!("{}", summarize(&outcome));
    Ok(if outcome.report.passed { 0 } else { 1 })
}

/// Turns a defaults file into flag arguments.
pub fn config_file_args(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let pairs: Vec<(String, String)> = if text.trim_start().starts_with('{') {
        let map: serde_json::Map<String, serde_json::Value> =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        map.into_iter()
            .map(|(k, v)| {
                let v = match v {
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                };
                (k, v)
            })
            .collect()
    } else {
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("{}:{}: expected key = value", path.display(), i + 1);
            };
            out.push((k.trim().to_owned(), v.trim().to_owned()));
        }
        out
    };
    let mut args = Vec::new();
    for (k, v) in pairs {
        let flag = format!("--{}", k.replace('_', "-"));
        match v.as_str() {
            "true" => args.push(flag),
            "false" => {}
            _ => {
                args.push(flag);
                args.push(v);
            }
        }
    }
    Ok(args)
}

/// Splices defaults from `--config FILE` in front of the subcommand's own
/// flags so the command line overrides them.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = argv.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(argv);
    };
    let path = match argv[pos].strip_prefix("--config=") {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(argv.get(pos + 1).context("--config needs a file")?),
    };
    let extra = config_file_args(&path)?;
    let sub = argv
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, a)| ["gen", "build", "verify", "bench", "trace"].contains(&a.as_str()))
        .map(|(i, _)| i);
    let Some(sub) = sub else { return Ok(argv) };
    let mut out = argv[..=sub].to_vec();
    out.extend(extra);
    out.extend_from_slice(&argv[sub + 1..]);
    Ok(out)
}
