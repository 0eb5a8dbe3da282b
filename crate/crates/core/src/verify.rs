//! Hop-limited distances, the exact oracle, and hopset contract checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edge_set::EdgeSet;
use crate::graph::{Graph, VertexId};
use crate::instrument::LevelCounters;
use crate::rng::{stream, tag};
use crate::search::Searcher;

/// `dist^(β)` from one source: the lightest path using at most `beta` edges.
#[derive(Clone, Debug, PartialEq)]
pub struct HopLimitedDistances {
    pub source: VertexId,
    pub beta: usize,
    pub dist: Vec<f64>,
}

/// Round-by-round Bellman–Ford from one source.
///
/// Each round relaxes every edge out of the vertices improved in the previous
/// round, reading the previous round's vector and writing a fresh one, so
/// after `t` rounds the vector holds exactly the `≤ t`-hop distances.
pub struct HopRounds<'a> {
    g: &'a Graph,
    source: VertexId,
    rounds: usize,
    current: Vec<f64>,
    next: Vec<f64>,
    frontier: Vec<VertexId>,
    in_frontier: Vec<bool>,
}

impl<'a> HopRounds<'a> {
    pub fn new(g: &'a Graph, source: VertexId) -> Self {
        let n = g.vertex_count();
        assert!(source < n, "source {source} out of range");
        let mut current = vec![f64::INFINITY; n];
        current[source] = 0.0;
        Self {
            g,
            source,
            rounds: 0,
            next: current.clone(),
            current,
            frontier: vec![source],
            in_frontier: vec![false; n],
        }
    }

    /// Distances after [`HopRounds::rounds`] rounds.
    pub fn distances(&self) -> &[f64] {
        &self.current
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// True once another round cannot change anything.
    pub fn converged(&self) -> bool {
        self.frontier.is_empty()
    }

    /// Performs one synchronous relaxation round.
    pub fn step(&mut self) {
        self.rounds += 1;
        if self.frontier.is_empty() {
            return;
        }
        let mut changed = Vec::new();
        for &u in &self.frontier {
            let du = self.current[u];
            for (v, w) in self.g.out_edges(u) {
                let nd = du + w;
                if nd < self.next[v] {
                    self.next[v] = nd;
                    if !self.in_frontier[v] {
                        self.in_frontier[v] = true;
                        changed.push(v);
                    }
                }
            }
        }
        for &v in &changed {
            self.in_frontier[v] = false;
            self.current[v] = self.next[v];
        }
        changed.sort_unstable();
        self.frontier = changed;
    }

    pub fn into_result(self) -> HopLimitedDistances {
        HopLimitedDistances {
            source: self.source,
            beta: self.rounds,
            dist: self.current,
        }
    }
}

/// Exactly `beta` rounds of synchronous relaxation from `source`.
pub fn hop_limited_distances(g: &Graph, source: VertexId, beta: usize) -> HopLimitedDistances {
    let mut rounds = HopRounds::new(g, source);
    while rounds.rounds() < beta && !rounds.converged() {
        rounds.step();
    }
    HopLimitedDistances {
        source,
        beta,
        dist: rounds.current,
    }
}

/// Exact single-source distances by Dijkstra, `+inf` where unreachable.
pub fn dijkstra(g: &Graph, source: VertexId) -> Vec<f64> {
    dijkstra_with(&mut Searcher::new(g.vertex_count()), g, source)
}

fn dijkstra_with(searcher: &mut Searcher, g: &Graph, source: VertexId) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.vertex_count()];
    for (v, d) in searcher.run(g.view(), source, f64::INFINITY) {
        dist[v] = d;
    }
    dist
}

/// Exact distances from each of `sources`, in the given order.
pub fn oracle_distances(g: &Graph, sources: &[VertexId]) -> Vec<Vec<f64>> {
    sources
        .par_iter()
        .map_init(|| Searcher::new(g.vertex_count()), |s, &src| dijkstra_with(s, g, src))
        .collect()
}

/// Which pairs `check_hopset` compares.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum PairSampling {
    /// All pairs for `n <= 256`, otherwise 32 sampled sources.
    #[default]
    Auto,
    AllPairs,
    /// `sources` random sources, each against all targets.
    Sampled { sources: usize },
}

impl PairSampling {
    pub const AUTO_ALL_PAIRS_LIMIT: usize = 256;
    pub const AUTO_SOURCES: usize = 32;

    /// Sources to check, ascending.
    pub fn sources(self, n: usize, seed: u64) -> Vec<VertexId> {
        let count = match self {
            PairSampling::AllPairs => n,
            PairSampling::Auto if n <= Self::AUTO_ALL_PAIRS_LIMIT => n,
            PairSampling::Auto => Self::AUTO_SOURCES.min(n),
            PairSampling::Sampled { sources } => sources.min(n),
        };
        if count == n {
            return (0..n).collect();
        }
        let mut rng = stream(seed, &[tag::PAIR_SAMPLE]);
        let mut picked = sample(&mut rng, n, count).into_vec();
        picked.sort_unstable();
        picked
    }
}

impl fmt::Display for PairSampling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairSampling::Auto => f.write_str("auto"),
            PairSampling::AllPairs => f.write_str("all-pairs"),
            PairSampling::Sampled { sources } => write!(f, "sampled:{sources}"),
        }
    }
}

impl FromStr for PairSampling {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(PairSampling::Auto),
            "all-pairs" => Ok(PairSampling::AllPairs),
            _ => s
                .strip_prefix("sampled:")
                .and_then(|c| c.parse().ok())
                .filter(|&c: &usize| c > 0)
                .map(|sources| PairSampling::Sampled { sources })
                .ok_or_else(|| format!("expected auto, all-pairs or sampled:<count>, got {s:?}")),
        }
    }
}

impl From<PairSampling> for String {
    fn from(p: PairSampling) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for PairSampling {
    type Error = String;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CheckOptions {
    pub beta: usize,
    pub epsilon: f64,
    pub sampling: PairSampling,
    /// Relative slack for floating-point comparisons against the oracle.
    pub tolerance: f64,
    pub seed: u64,
}

impl CheckOptions {
    pub fn new(beta: usize, epsilon: f64) -> Self {
        Self {
            beta,
            epsilon,
            sampling: PairSampling::Auto,
            tolerance: 1e-9,
            seed: 0,
        }
    }

    pub fn with_sampling(mut self, sampling: PairSampling) -> Self {
        self.sampling = sampling;
        self
    }
}

/// A hopset edge lighter than the true distance it claims to shortcut.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ValidityViolation {
    pub source: VertexId,
    pub target: VertexId,
    pub weight: f64,
    /// `None` when the target is unreachable in the original graph.
    pub distance: Option<f64>,
}

/// A checked pair whose `β`-hop augmented distance misses the bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairViolation {
    pub source: VertexId,
    pub target: VertexId,
    pub distance: f64,
    pub beta_distance: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairRow {
    pub source: VertexId,
    pub target: VertexId,
    pub true_distance: f64,
    pub beta_distance: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub hopset_edges: usize,
    pub beta_used: usize,
    pub epsilon: f64,
    pub sampling: PairSampling,
    pub sources_checked: usize,
    pub pairs_checked: usize,
    /// Pairs skipped because the target is unreachable in the original graph.
    pub pairs_unreachable: usize,
    pub validity_violations: Vec<ValidityViolation>,
    pub bound_violations: Vec<PairViolation>,
    /// Pairs whose exact distance in the augmented graph differs from the
    /// original (including reachability changes).
    pub distance_mismatches: usize,
    /// Largest `dist^(β)_{G ∪ H} / dist_G` over checked pairs with positive
    /// distance; `None` if some pair has no path within `β` hops.
    pub max_ratio: Option<f64>,
    pub ratio_bound_met: bool,
    pub per_level_counters: BTreeMap<u32, LevelCounters>,
    #[serde(skip)]
    pub pairs: Vec<PairRow>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.validity_violations.is_empty()
    }

    /// Zero validity violations and every checked pair within the bound.
    pub fn passed(&self) -> bool {
        self.is_valid() && self.ratio_bound_met && self.distance_mismatches == 0
    }
}

/// Checks `h` against the `(β, ε)`-hopset contract on `g`.
///
/// Validity (every hopset weight at least the true distance) is checked for
/// every edge of `h`. The distance bound
/// `dist_G ≤ dist^(β)_{G ∪ H} ≤ (1+ε) dist_G` is checked on the pairs
/// selected by `options.sampling`; unreachable pairs are counted and
/// skipped, zero-distance pairs need a zero-weight `β`-hop path.
pub fn check_hopset(g: &Graph, h: &EdgeSet, options: &CheckOptions) -> Result<VerificationReport, crate::error::GraphError> {
    let n = g.vertex_count();
    let augmented = g.augment(h)?;
    let tol = options.tolerance;

    let h_sources: Vec<VertexId> = h.iter().map(|e| e.source).collect::<BTreeSet<_>>().into_iter().collect();
    let h_oracle: BTreeMap<VertexId, Vec<f64>> = h_sources
        .iter()
        .copied()
        .zip(oracle_distances(g, &h_sources))
        .collect();
    let validity_violations: Vec<ValidityViolation> = h
        .iter()
        .filter_map(|e| {
            let d = h_oracle[&e.source][e.target];
            let ok = d.is_finite() && e.weight >= d - tol * d;
            (!ok).then_some(ValidityViolation {
                source: e.source,
                target: e.target,
                weight: e.weight,
                distance: d.is_finite().then_some(d),
            })
        })
        .collect();

    let sources = options.sampling.sources(n, options.seed);
    struct SourceCheck {
        rows: Vec<PairRow>,
        unreachable: usize,
        mismatches: usize,
        violations: Vec<PairViolation>,
    }
    let per_source: Vec<SourceCheck> = sources
        .par_iter()
        .map_init(
            || Searcher::new(n),
            |s, &src| {
                let exact = dijkstra_with(s, g, src);
                let exact_aug = dijkstra_with(s, &augmented, src);
                let hop = hop_limited_distances(&augmented, src, options.beta).dist;
                let mut check = SourceCheck {
                    rows: Vec::new(),
                    unreachable: 0,
                    mismatches: 0,
                    violations: Vec::new(),
                };
                for v in 0..n {
                    let d = exact[v];
                    if !same_distance(d, exact_aug[v], tol) {
                        check.mismatches += 1;
                    }
                    if !d.is_finite() {
                        check.unreachable += 1;
                        continue;
                    }
                    let b = hop[v];
                    let ratio = if d == 0.0 {
                        if b == 0.0 { 1.0 } else { f64::INFINITY }
                    } else {
                        b / d
                    };
                    let within = b.is_finite() && b >= d - tol * d && b <= (1.0 + options.epsilon) * d * (1.0 + tol);
                    if !within {
                        check.violations.push(PairViolation {
                            source: src,
                            target: v,
                            distance: d,
                            beta_distance: b.is_finite().then_some(b),
                        });
                    }
                    check.rows.push(PairRow {
                        source: src,
                        target: v,
                        true_distance: d,
                        beta_distance: b,
                        ratio,
                    });
                }
                check
            },
        )
        .collect();

    let mut report = VerificationReport {
        n,
        hopset_edges: h.len(),
        beta_used: options.beta,
        epsilon: options.epsilon,
        sampling: options.sampling,
        sources_checked: sources.len(),
        pairs_checked: 0,
        pairs_unreachable: 0,
        validity_violations,
        bound_violations: Vec::new(),
        distance_mismatches: 0,
        max_ratio: Some(1.0),
        ratio_bound_met: true,
        per_level_counters: BTreeMap::new(),
        pairs: Vec::new(),
    };
    for c in per_source {
        report.pairs_unreachable += c.unreachable;
        report.distance_mismatches += c.mismatches;
        report.pairs_checked += c.rows.len();
        for row in &c.rows {
            report.max_ratio = match report.max_ratio {
                Some(m) if row.ratio.is_finite() => Some(m.max(row.ratio)),
                _ => None,
            };
        }
        report.bound_violations.extend(c.violations);
        report.pairs.extend(c.rows);
    }
    report.ratio_bound_met = report.bound_violations.is_empty();
    Ok(report)
}

fn same_distance(a: f64, b: f64, tol: f64) -> bool {
    if a.is_finite() != b.is_finite() {
        return false;
    }
    !a.is_finite() || (a - b).abs() <= tol * a.abs().max(1.0)
}

/// Smallest `β` such that every pair in `pairs` reachable in `g` satisfies
/// `dist^(β)_{G ∪ H}(u, v) ≤ (1+ε) dist_G(u, v)`.
///
/// The predicate is monotone in `β`, so rather than re-running `β`-round
/// Bellman–Ford for doubling and bisection candidates, each source's
/// relaxation advances one round at a time until all of its targets pass;
/// the answer is the same.
pub fn measure_hopbound(g: &Graph, h: &EdgeSet, epsilon: f64, pairs: &[(VertexId, VertexId)]) -> Result<usize, crate::error::GraphError> {
    let augmented = g.augment(h)?;
    let mut by_source: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(u, v) in pairs {
        by_source.entry(u).or_default().push(v);
    }
    let by_source: Vec<(VertexId, Vec<VertexId>)> = by_source.into_iter().collect();
    let per_source: Vec<usize> = by_source
        .par_iter()
        .map(|(src, targets)| {
            let exact = dijkstra(g, *src);
            let targets: Vec<VertexId> = targets.iter().copied().filter(|&t| exact[t].is_finite()).collect();
            let mut rounds = HopRounds::new(&augmented, *src);
            let satisfied = |dist: &[f64]| {
                targets
                    .iter()
                    .all(|&t| dist[t] <= (1.0 + epsilon) * exact[t] * (1.0 + 1e-12))
            };
            while !satisfied(rounds.distances()) {
                assert!(
                    !rounds.converged(),
                    "augmented distances exceed the bound at convergence; the hopset is invalid"
                );
                rounds.step();
            }
            rounds.rounds()
        })
        .collect();
    Ok(per_source.into_iter().max().unwrap_or(0))
}
