//! Rounded, iterated hopset construction.
//!
//! Each sweep walks the scales `i ∈ [-2, ceil(log2(n² W))]`. At scale `i`
//! edge weights are rounded up to integer multiples of the unit
//! `ŵ = δ 2^{i-1} / β`; edges of weight at least `2^{i+1}` are dropped and
//! zero-weight edges cost one unit. Searches then run on small integer
//! weights, so their depth depends on `β/δ` rather than on the absolute
//! path weight. Hopset edges found on the quantized graph are scaled back
//! by `ŵ` (weights below 1 become 0) and, after the sweep, injected into
//! the working graph so that the next sweep can shortcut paths twice as
//! long.

use serde::{Deserialize, Serialize};

use crate::edge_set::EdgeSet;
use crate::error::{HopsetError, ParamsError};
use crate::graph::{Edge, Graph};
use crate::hopset::shortcut_and_recurse;
use crate::instrument::Instrumentation;
use crate::levels::assign_levels_keyed;
use crate::params::{lg, Params};
use crate::recurse::RecurseContext;

/// Rounding unit for one scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundingScheme {
    pub scale_index: i64,
    pub unit: f64,
    pub delta: f64,
    pub beta: f64,
}

impl RoundingScheme {
    /// `ŵ = δ 2^{i-1} / β`.
    pub fn new(scale_index: i64, delta: f64, beta: f64) -> Self {
        Self {
            scale_index,
            unit: delta * 2f64.powi(scale_index as i32 - 1) / beta,
            delta,
            beta,
        }
    }

    /// Edges at least this heavy are dropped: `2^{i+1}`.
    pub fn drop_threshold(&self) -> f64 {
        2f64.powi(self.scale_index as i32 + 1)
    }

    /// Integer weight of an edge, `None` if dropped.
    pub fn round(&self, w: f64) -> Option<u64> {
        if w == 0.0 {
            return Some(1);
        }
        if w >= self.drop_threshold() {
            return None;
        }
        let mut q = (w / self.unit).ceil().max(1.0);
        // keep unit * q >= w exactly in floating point
        while self.unit * q < w {
            q += 1.0;
        }
        Some(q as u64)
    }
}

/// A graph whose kept edges carry integer weights in units of `ŵ`.
#[derive(Clone, Debug)]
pub struct QuantizedGraph<'a> {
    pub base: &'a Graph,
    pub scheme: RoundingScheme,
    /// Rounded weight of each base edge in `base.edges()` order.
    pub integer_weights: Vec<Option<u64>>,
    graph: Graph,
}

impl QuantizedGraph<'_> {
    /// The kept edges with their integer weights (as `f64`).
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn unit(&self) -> f64 {
        self.scheme.unit
    }
}

/// Rounds every edge of `g` under `scheme`: weight 0 becomes one unit,
/// weights `>= 2^{i+1}` are dropped, all others become `ceil(w / ŵ)`.
pub fn quantize(g: &Graph, scheme: RoundingScheme) -> QuantizedGraph<'_> {
    assert!(scheme.unit > 0.0, "rounding unit must be positive");
    let integer_weights: Vec<Option<u64>> = g.edges().map(|e| scheme.round(e.weight)).collect();
    let kept = g
        .edges()
        .zip(&integer_weights)
        .filter_map(|(e, q)| q.map(|q| Edge::new(e.source, e.target, q as f64)));
    let graph = Graph::from_edges(g.vertex_count(), kept).expect("quantized edges are valid");
    QuantizedGraph {
        base: g,
        scheme,
        integer_weights,
        graph,
    }
}

/// Constants of the rounded construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParallelParams {
    /// Rounding precision `δ`.
    pub delta: f64,
    /// Per-sweep approximation `ε'` of the recursion.
    pub epsilon_inner: f64,
    /// `L`.
    pub shortcut_depth: u32,
    /// Target hop bound `β`.
    pub beta: f64,
    /// Number of outer sweeps.
    pub sweeps: u32,
}

impl ParallelParams {
    /// `(1+δ)^j (1+ε')^j` for `j` sweeps.
    pub fn compounded_bound(&self, sweeps: u32) -> f64 {
        ((1.0 + self.delta) * (1.0 + self.epsilon_inner)).powi(sweeps as i32)
    }

    /// Desk-scale constants: `ε' = δ` and just enough sweeps to double a
    /// `2β`-hop reach up to `n`, i.e. `ceil(log2(n / 2β)) + 1`.
    pub fn practical(n: usize, beta: f64, delta: f64, shortcut_depth: u32) -> Self {
        let reach = (n as f64 / (2.0 * beta)).max(1.0);
        Self {
            delta,
            epsilon_inner: delta,
            shortcut_depth,
            beta,
            sweeps: (reach.log2() - 1e-9).ceil().max(0.0) as u32 + 1,
        }
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return Err(ParamsError::invalid("delta", "must be positive"));
        }
        if !(self.beta >= 1.0) || !self.beta.is_finite() {
            return Err(ParamsError::invalid("beta", "must be at least 1"));
        }
        if !(self.epsilon_inner >= 0.0) {
            return Err(ParamsError::invalid("epsilon_inner", "must be nonnegative"));
        }
        if self.sweeps < 1 {
            return Err(ParamsError::invalid("sweeps", "must be at least 1"));
        }
        Ok(())
    }
}

/// Literal constants: `δ = ε' = ε / (8 lg n)`, `L = ceil(17 − log_k ε)`,
/// `β = 6 λ^{log_k n} n^{1/2} / lg n`, `λ lg² n` sweeps.
pub fn derive_parallel_params(n: usize, epsilon: f64, k: u32, lambda: u32) -> Result<ParallelParams, ParamsError> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(ParamsError::invalid("epsilon", format!("must be positive, got {epsilon}")));
    }
    if k < 2 {
        return Err(ParamsError::invalid("k", format!("must be at least 2, got {k}")));
    }
    if n < 2 {
        return Err(ParamsError::invalid("n", format!("need at least 2 vertices, got {n}")));
    }
    let log_n = lg(n) as f64;
    let log_k = |x: f64| x.ln() / (k as f64).ln();
    let delta = epsilon / (8.0 * log_n);
    let p = ParallelParams {
        delta,
        epsilon_inner: delta,
        shortcut_depth: ((17.0 - log_k(epsilon)) - 1e-9).ceil().max(0.0) as u32,
        beta: 6.0 * (lambda as f64).powf(log_k(n as f64)) * (n as f64).sqrt() / log_n,
        sweeps: lambda * lg(n) * lg(n),
    };
    Ok(p)
}

/// Runs the rounded construction.
///
/// `params` supplies the recursion constants (levels, radii, `k^c`);
/// `parallel.shortcut_depth` overrides `params.shortcut_depth`. The input
/// must be normalized (lightest nonzero weight at least 1): the rule that
/// floors scaled weights below 1 to 0 is only sound then.
pub fn phopset(
    g: &Graph,
    params: &Params,
    parallel: &ParallelParams,
    seed: u64,
    instrumentation: &mut Instrumentation,
) -> Result<EdgeSet, HopsetError> {
    parallel.validate()?;
    if g.min_positive_weight() < 1.0 {
        return Err(ParamsError::invalid(
            "graph",
            format!("weights must be normalized; lightest nonzero weight is {}", g.min_positive_weight()),
        )
        .into());
    }
    let n = g.vertex_count();
    let mut inner = params.clone();
    inner.shortcut_depth = parallel.shortcut_depth;
    let (delta, beta) = (parallel.delta, parallel.beta);
    let top = scale_cap(n, g.max_weight());
    let shortcut_radius = 8.0 * (1.0 + delta) * beta / delta;
    let seed_distance = 4.0 * (1.0 + delta) * beta / (delta * inner.k_pow_c);

    let mut hopset = EdgeSet::new();
    let mut working = g.clone();
    for sweep in 0..parallel.sweeps as u64 {
        let levels = assign_levels_keyed(n, &inner, seed, sweep);
        for i in -2..=top {
            let scheme = RoundingScheme::new(i, delta, beta);
            let quantized = quantize(&working, scheme);
            let ctx = RecurseContext {
                root: quantized.graph(),
                levels: &levels,
                params: &inner,
                seed,
                round: sweep,
                scale: i,
                trace: instrumentation.tracing(),
            };
            let (edges, instr) = shortcut_and_recurse(&ctx, shortcut_radius, seed_distance);
            instrumentation.merge(instr);
            for e in edges.iter() {
                let mut w = e.weight * scheme.unit;
                if w < 1.0 {
                    w = 0.0;
                }
                if working.edge_weight(e.source, e.target).is_some_and(|ew| ew <= w) {
                    continue;
                }
                hopset.insert(e.source, e.target, w);
            }
        }
        working = g.augment(&hopset)?;
    }
    Ok(hopset)
}

/// `ceil(log2(n² W))` with `W` at least 1.
pub fn scale_cap(n: usize, max_weight: f64) -> i64 {
    ((n as f64).powi(2) * max_weight.max(1.0)).log2().ceil() as i64
}
