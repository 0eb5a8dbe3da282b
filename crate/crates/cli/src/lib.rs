//! Experiment harness for the `hopset` command.
//!
//! An [`ExperimentConfig`] names an input graph (generated or loaded), a
//! construction and its parameters, a verification plan and output paths.
//! [`run_experiment`] executes it and writes a hopset edge list with a JSON
//! sidecar, a JSON report and CSV tables. Reports carry no timings or
//! paths, so a configuration always reproduces the same bytes.

pub mod bench;
pub mod cli;
pub mod config;
pub mod experiment;

pub use bench::{run_bench, BenchRow};
pub use config::{
    Algorithm, ExperimentConfig, GraphInput, ModeName, OutputPaths, ParallelOverrides, ParamsConfig,
    VerificationConfig,
};
pub use experiment::{run_experiment, ExperimentOutcome, ExperimentReport};
