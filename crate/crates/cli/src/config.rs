//! Experiment configuration.

use std::path::PathBuf;

use hopset_core::{GeneratorSpec, PairSampling, PracticalConstants, ScaleRange};
use serde::{Deserialize, Serialize};

/// Where the input graph comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphInput {
    Generate(GeneratorSpec),
    /// Edge-list file; weights are normalized on load.
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    #[default]
    Unweighted,
    Weighted,
    Parallel,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    Paper,
    #[default]
    Practical,
}

/// Overrides for the rounded construction; unset fields take the mode's
/// defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct ParallelOverrides {
    pub beta: Option<f64>,
    pub delta: Option<f64>,
    pub sweeps: Option<u32>,
    pub shortcut_depth: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct ParamsConfig {
    pub mode: ModeName,
    pub epsilon: f64,
    pub k: u32,
    /// Defaults to 2 in practical mode and 8 in paper mode.
    pub lambda: Option<u32>,
    pub repetitions: Option<u32>,
    pub scale_range: ScaleRange,
    /// Used in practical mode only.
    pub practical: PracticalConstants,
    pub parallel: ParallelOverrides,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        Self {
            mode: ModeName::Practical,
            epsilon: 0.5,
            k: 2,
            lambda: None,
            repetitions: None,
            scale_range: ScaleRange::Auto,
            practical: PracticalConstants::default(),
            parallel: ParallelOverrides::default(),
        }
    }
}

impl ParamsConfig {
    pub fn lambda(&self) -> u32 {
        self.lambda.unwrap_or(match self.mode {
            ModeName::Paper => 8,
            ModeName::Practical => 2,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct VerificationConfig {
    pub enabled: bool,
    pub sampling: PairSampling,
    /// Defaults to the construction's ε (sequential) or its compounded
    /// bound minus one (rounded construction).
    pub epsilon: Option<f64>,
    /// Defaults to `n − 1` (sequential) or `ceil(β)` (rounded construction).
    pub beta: Option<usize>,
    /// Also search for the smallest sufficient hop budget on the checked
    /// pairs.
    pub measure_hopbound: bool,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        Self {
            enabled: true,
            sampling: PairSampling::Auto,
            epsilon: None,
            beta: None,
            measure_hopbound: false,
        }
    }
}

/// Files written by an experiment; unset entries are skipped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct OutputPaths {
    /// Hopset edge list; a JSON sidecar goes to `<hopset>.json`.
    pub hopset: Option<PathBuf>,
    /// JSON experiment report.
    pub report: Option<PathBuf>,
    /// CSV of per-level counters.
    pub stats: Option<PathBuf>,
    /// CSV of checked pairs.
    pub pairs: Option<PathBuf>,
    /// JSON list of per-frame traces.
    pub trace: Option<PathBuf>,
}

/// A full experiment: everything that affects the output is in here, and a
/// single master seed fans out to every random draw.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ExperimentConfig {
    pub input: GraphInput,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub algorithm: Algorithm,
    #[serde(default)]
    pub params: ParamsConfig,
    #[serde(default)]
    pub verification: VerificationConfig,
    /// Verify this hopset file instead of building one.
    #[serde(default)]
    pub hopset_input: Option<PathBuf>,
    #[serde(default)]
    pub outputs: OutputPaths,
}

impl ExperimentConfig {
    pub fn new(input: GraphInput) -> Self {
        Self {
            input,
            seed: 0,
            algorithm: Algorithm::default(),
            params: ParamsConfig::default(),
            verification: VerificationConfig::default(),
            hopset_input: None,
            outputs: OutputPaths::default(),
        }
    }
}
