//! Size and time sweeps over generated graphs.

use std::time::Instant;

use anyhow::Result;
use hopset_core::{Family, GeneratorSpec};
use serde::Serialize;

use crate::config::{ExperimentConfig, GraphInput};
use crate::experiment::run_experiment;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub hopset_edges: usize,
    pub edges_per_vertex: f64,
    pub elapsed_ms: f64,
    pub max_ratio: Option<f64>,
    pub measured_hopbound: Option<usize>,
    pub passed: bool,
}

/// Runs `template` once per `(n, seed)` with the input replaced by a
/// generated `family` graph. Each seed is used both for the graph and for
/// the construction.
pub fn run_bench(template: &ExperimentConfig, family: Family, max_weight: u64, sizes: &[usize], seeds: u64) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in sizes {
        for seed in 0..seeds {
            let mut config = template.clone();
            config.input = GraphInput::Generate(GeneratorSpec::new(family, n).max_weight(max_weight).seed(seed));
            config.seed = seed;
            config.outputs = Default::default();
            let start = Instant::now();
            let outcome = run_experiment(&config)?;
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let report = &outcome.report;
            rows.push(BenchRow {
                family,
                n,
                m: report.graph.m,
                seed,
                hopset_edges: outcome.hopset.len(),
                edges_per_vertex: outcome.hopset.len() as f64 / n as f64,
                elapsed_ms,
                max_ratio: report.verification.as_ref().and_then(|v| v.max_ratio),
                measured_hopbound: report.measured_hopbound,
                passed: report.passed,
            });
        }
    }
    Ok(rows)
}
