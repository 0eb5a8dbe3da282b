//! The load → build → verify pipeline and its artifacts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hopset_core::instrument::FrameTrace;
use hopset_core::io::{load_edge_set, save_edge_set};
use hopset_core::verify::PairRow;
use hopset_core::{
    check_hopset, derive_parallel_params, derive_params, hopset_unweighted, hopset_weighted, load_graph,
    measure_hopbound, phopset, CheckOptions, EdgeSet, Graph, HopsetSidecar, Instrumentation, LevelCounters,
    ModeConfig, ParallelParams, Params, VerificationReport,
};
use serde::Serialize;

use crate::config::{Algorithm, ExperimentConfig, GraphInput, ModeName, VerificationConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    /// After normalization.
    pub max_weight: f64,
    /// Factor applied to input weights so the lightest nonzero one is 1.
    pub weight_scale: f64,
    pub has_zero_weight: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BuildSummary {
    pub hopset_edges: usize,
    pub top_level_shortcut_edges: usize,
    pub searches: u64,
    pub max_settled_distance: f64,
}

/// Everything an experiment reports. Contains no timings or paths, so equal
/// configurations give byte-identical JSON.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub input: GraphInput,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub graph: GraphSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parallel: Option<ParallelParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub build: Option<BuildSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured_hopbound: Option<usize>,
    pub passed: bool,
}

/// Report plus in-memory results. The hopset is in normalized weight units.
#[derive(Debug)]
pub struct ExperimentOutcome {
    pub report: ExperimentReport,
    pub graph: Graph,
    pub hopset: EdgeSet,
    pub instrumentation: Instrumentation,
}

pub fn load_input(input: &GraphInput) -> Result<Graph> {
    match input {
        GraphInput::Generate(spec) => Ok(spec.generate()?.normalized()),
        GraphInput::File(path) => load_graph(path).with_context(|| format!("loading graph {}", path.display())),
    }
}

/// Derives the sequential parameter set for an `n`-vertex graph.
pub fn resolve_params(config: &ExperimentConfig, n: usize) -> Result<Params> {
    let p = &config.params;
    let mode = match p.mode {
        ModeName::Paper => ModeConfig::PaperExact,
        ModeName::Practical => ModeConfig::Practical(p.practical),
    };
    let mut params = derive_params(n, p.epsilon, p.k, p.lambda(), &mode)?.with_scale_range(p.scale_range);
    if let Some(r) = p.repetitions {
        params.repetitions = r;
    }
    params.validate()?;
    Ok(params)
}

/// Derives the rounded construction's parameters. Practical mode defaults
/// to `β = 16`, `δ = 0.05` and the practical `L`.
pub fn resolve_parallel(config: &ExperimentConfig, params: &Params) -> Result<ParallelParams> {
    let p = &config.params;
    let mut pp = match p.mode {
        ModeName::Paper => derive_parallel_params(params.n, p.epsilon, p.k, p.lambda())?,
        ModeName::Practical => ParallelParams::practical(
            params.n,
            p.parallel.beta.unwrap_or(16.0),
            p.parallel.delta.unwrap_or(0.05),
            params.shortcut_depth,
        ),
    };
    if let Some(b) = p.parallel.beta {
        pp.beta = b;
    }
    if let Some(d) = p.parallel.delta {
        pp.delta = d;
        pp.epsilon_inner = d;
    }
    if let Some(s) = p.parallel.sweeps.or(p.repetitions) {
        pp.sweeps = s;
    }
    if let Some(l) = p.parallel.shortcut_depth {
        pp.shortcut_depth = l;
    }
    pp.validate()?;
    Ok(pp)
}

fn check_options(v: &VerificationConfig, n: usize, default_beta: usize, default_eps: f64, seed: u64) -> CheckOptions {
    let mut o = CheckOptions::new(v.beta.unwrap_or(default_beta).max(1), v.epsilon.unwrap_or(default_eps))
        .with_sampling(v.sampling);
    o.seed = seed;
    debug_assert!(n > 0);
    o
}

/// Runs one experiment and writes the configured artifacts.
///
/// `passed` is true iff verification found no validity violation, no
/// distance change and every checked pair within the bound (or verification
/// is disabled).
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let graph = load_input(&config.input)?;
    let n = graph.vertex_count();
    if n < 2 {
        bail!("graph has {n} vertices; at least 2 are needed");
    }
    let trace = config.outputs.trace.is_some();
    let mut instrumentation = if trace {
        Instrumentation::with_trace()
    } else {
        Instrumentation::new()
    };

    let params = resolve_params(config, n)?;
    let parallel = (config.algorithm == Algorithm::Parallel)
        .then(|| resolve_parallel(config, &params))
        .transpose()?;

    let (hopset, build) = match &config.hopset_input {
        Some(path) => {
            let (hn, mut h) = load_edge_set(path).with_context(|| format!("loading hopset {}", path.display()))?;
            if hn != n {
                bail!("hopset file declares {hn} vertices but the graph has {n}");
            }
            let scale = graph.scale();
            h.map_weights(|w| w * scale);
            (h, None)
        }
        None => {
            let h = match config.algorithm {
                Algorithm::Unweighted => hopset_unweighted(&graph, &params, config.seed, &mut instrumentation)?,
                Algorithm::Weighted => hopset_weighted(&graph, &params, config.seed, &mut instrumentation),
                Algorithm::Parallel => phopset(
                    &graph,
                    &params,
                    parallel.as_ref().expect("resolved above"),
                    config.seed,
                    &mut instrumentation,
                )?,
            };
            let summary = BuildSummary {
                hopset_edges: h.len(),
                top_level_shortcut_edges: instrumentation.top_level_shortcut_edges,
                searches: instrumentation.searches,
                max_settled_distance: instrumentation.max_settled_distance,
            };
            (h, Some(summary))
        }
    };

    let (default_beta, default_eps) = match &parallel {
        Some(pp) => (pp.beta.ceil() as usize, pp.compounded_bound(pp.sweeps) - 1.0),
        None => (n - 1, params.epsilon),
    };
    let mut verification = None;
    let mut measured_hopbound = None;
    if config.verification.enabled {
        let options = check_options(&config.verification, n, default_beta, default_eps, config.seed);
        let mut report = check_hopset(&graph, &hopset, &options)?;
        report.per_level_counters = instrumentation.per_level.clone();
        if config.verification.measure_hopbound {
            let pairs: Vec<(usize, usize)> = report.pairs.iter().map(|p| (p.source, p.target)).collect();
            measured_hopbound = Some(measure_hopbound(&graph, &hopset, options.epsilon, &pairs)?);
        }
        verification = Some(report);
    }
    let passed = verification.as_ref().is_none_or(|r| r.passed());

    let report = ExperimentReport {
        input: config.input.clone(),
        algorithm: config.algorithm,
        seed: config.seed,
        graph: GraphSummary {
            n,
            m: graph.edge_count(),
            max_weight: graph.max_weight(),
            weight_scale: graph.scale(),
            has_zero_weight: graph.has_zero_weight_edge(),
        },
        params: Some(params.clone()),
        parallel,
        build,
        verification,
        measured_hopbound,
        passed,
    };
    let outcome = ExperimentOutcome {
        report,
        graph,
        hopset,
        instrumentation,
    };
    write_artifacts(config, &outcome, &params)?;
    Ok(outcome)
}

fn write_artifacts(config: &ExperimentConfig, outcome: &ExperimentOutcome, params: &Params) -> Result<()> {
    let out = &config.outputs;
    let graph = &outcome.graph;
    if let (Some(path), None) = (&out.hopset, &config.hopset_input) {
        let mut h = outcome.hopset.clone();
        let scale = graph.scale();
        h.map_weights(|w| w / scale);
        save_edge_set(path, graph.vertex_count(), &h).with_context(|| format!("writing {}", path.display()))?;
        let sidecar = sidecar(config, outcome, params);
        write_json(&sidecar_path(path), &sidecar)?;
    }
    if let Some(path) = &out.report {
        write_json(path, &outcome.report)?;
    }
    if let Some(path) = &out.stats {
        write_level_csv(path, &outcome.instrumentation.per_level)?;
    }
    if let (Some(path), Some(v)) = (&out.pairs, &outcome.report.verification) {
        write_pairs_csv(path, &v.pairs)?;
    }
    if let Some(path) = &out.trace {
        let frames: &[FrameTrace] = outcome.instrumentation.frames.as_deref().unwrap_or(&[]);
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = BufWriter::new(file);
        serde_json::to_writer(&mut w, frames)?;
        writeln!(w)?;
        w.flush()?;
    }
    Ok(())
}

/// `<hopset>.json`.
pub fn sidecar_path(hopset: &Path) -> PathBuf {
    let mut s = hopset.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn sidecar(config: &ExperimentConfig, outcome: &ExperimentOutcome, params: &Params) -> HopsetSidecar {
    let n = outcome.graph.vertex_count();
    let scale_range = match (config.algorithm, &outcome.report.parallel) {
        (Algorithm::Unweighted, _) => params.scale_range.resolve_unweighted(n),
        (Algorithm::Weighted, _) => params.scale_range.resolve_weighted(n, outcome.graph.max_weight()),
        (Algorithm::Parallel, _) => (-2, hopset_core::parallel::scale_cap(n, outcome.graph.max_weight())),
    };
    let pp = outcome.report.parallel;
    HopsetSidecar {
        n,
        algorithm: serde_json::to_value(config.algorithm)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default(),
        params: serde_json::to_value(params).unwrap_or_default(),
        seed: config.seed,
        scale_range,
        edge_count: outcome.hopset.len(),
        weight_scale: outcome.graph.scale(),
        delta: pp.map(|p| p.delta),
        beta: pp.map(|p| p.beta),
        sweeps: pp.map(|p| p.sweeps),
        scales: pp.map(|_| (scale_range.1 - scale_range.0 + 1) as usize),
    }
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct LevelRow {
    level: u32,
    subproblems: usize,
    core_subproblems: usize,
    fringe_subproblems: usize,
    frame_vertices: usize,
    pivots: usize,
    shortcutters: usize,
    max_related_set: usize,
    fringe_vertices: usize,
    max_fringe: usize,
    shortcut_edges: usize,
}

fn write_level_csv(path: &Path, levels: &std::collections::BTreeMap<u32, LevelCounters>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    for (&level, c) in levels {
        w.serialize(LevelRow {
            level,
            subproblems: c.subproblem_count,
            core_subproblems: c.core_subproblems,
            fringe_subproblems: c.fringe_subproblems,
            frame_vertices: c.frame_vertices,
            pivots: c.pivot_count,
            shortcutters: c.shortcutter_count,
            max_related_set: c.max_related_set,
            fringe_vertices: c.fringe_vertices,
            max_fringe: c.max_fringe,
            shortcut_edges: c.shortcut_edges,
        })?;
    }
    w.flush()?;
    Ok(())
}

fn write_pairs_csv(path: &Path, pairs: &[PairRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    for p in pairs {
        w.serialize(p)?;
    }
    w.flush()?;
    Ok(())
}
