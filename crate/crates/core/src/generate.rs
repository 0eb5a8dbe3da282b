//! Seeded graph generators for desk-scale experiments.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GenerateError;
use crate::graph::{Edge, Graph};
use crate::rng::{stream, tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `0 -> 1 -> ... -> n-1`.
    Path,
    /// A path closed by `n-1 -> 0`.
    Cycle,
    /// About `sqrt(n)` layers; every vertex outside the last layer has an
    /// edge into the next layer, and the remaining edges join random pairs
    /// of layers in increasing order.
    LayeredDag,
    /// `m` distinct ordered pairs chosen uniformly, no self-loops.
    RandomGnm,
    /// Row-major directed grid with right and down edges.
    Grid,
    /// Heap-ordered tree with edges `i -> 2i+1` and `i -> 2i+2`.
    BinaryTree,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Path,
        Family::Cycle,
        Family::LayeredDag,
        Family::RandomGnm,
        Family::Grid,
        Family::BinaryTree,
    ];

    fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::LayeredDag => "layered-dag",
            Family::RandomGnm => "random-gnm",
            Family::Grid => "grid",
            Family::BinaryTree => "binary-tree",
        }
    }

    fn id(self) -> u64 {
        Family::ALL.iter().position(|&f| f == self).unwrap() as u64
    }

    /// Edge count used when none is given: `4n` for random graphs, `2n`
    /// for layered DAGs; ignored by the other families.
    pub fn default_edges(self, n: usize) -> usize {
        match self {
            Family::RandomGnm => 4 * n,
            Family::LayeredDag => 2 * n,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown graph family {s:?}"))
    }
}

/// Everything that determines a generated graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    /// Edge count for `random-gnm` and `layered-dag`; `None` uses
    /// [`Family::default_edges`].
    pub m: Option<usize>,
    /// Weights are uniform integers in `[1, max_weight]`.
    pub max_weight: u64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize) -> Self {
        Self {
            family,
            n,
            m: None,
            max_weight: 1,
            seed: 0,
        }
    }

    pub fn edges(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn max_weight(mut self, w: u64) -> Self {
        self.max_weight = w;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn generate(&self) -> Result<Graph, GenerateError> {
        generate(self.family, self.n, self.m, self.max_weight, self.seed)
    }
}

/// Deterministic graph for `(family, n, m, max_weight, seed)`.
pub fn generate(family: Family, n: usize, m: Option<usize>, max_weight: u64, seed: u64) -> Result<Graph, GenerateError> {
    let infeasible = |reason: String| GenerateError::Infeasible {
        family: family.name(),
        reason,
    };
    if n == 0 {
        return Err(infeasible("n must be positive".into()));
    }
    if max_weight == 0 {
        return Err(infeasible("max weight must be at least 1".into()));
    }
    let mut rng = stream(seed, &[tag::GENERATOR, family.id(), n as u64]);
    let m = m.unwrap_or_else(|| family.default_edges(n));
    let pairs: Vec<(usize, usize)> = match family {
        Family::Path => (1..n).map(|i| (i - 1, i)).collect(),
        Family::Cycle => {
            if n < 2 {
                return Err(infeasible("a cycle needs at least 2 vertices".into()));
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        Family::BinaryTree => (1..n).map(|i| ((i - 1) / 2, i)).collect(),
        Family::Grid => {
            let width = (n as f64).sqrt().ceil() as usize;
            let mut p = Vec::new();
            for v in 0..n {
                if (v + 1) % width != 0 && v + 1 < n {
                    p.push((v, v + 1));
                }
                if v + width < n {
                    p.push((v, v + width));
                }
            }
            p
        }
        Family::RandomGnm => {
            let max_pairs = n.saturating_mul(n - 1);
            if m > max_pairs {
                return Err(infeasible(format!("m = {m} exceeds n(n-1) = {max_pairs}")));
            }
            random_pairs(&mut rng, m, |rng| {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                (u != v).then_some((u, v))
            })
        }
        Family::LayeredDag => layered_dag(&mut rng, n, m).map_err(infeasible)?,
    };
    let edges: Vec<Edge> = pairs
        .into_iter()
        .map(|(u, v)| {
            let w = if max_weight == 1 { 1 } else { rng.random_range(1..=max_weight) };
            Edge::new(u, v, w as f64)
        })
        .collect();
    Ok(Graph::from_edges(n, edges)?)
}

/// Draws distinct pairs until `m` are collected, in draw order.
fn random_pairs(
    rng: &mut ChaCha8Rng,
    m: usize,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Option<(usize, usize)>,
) -> Vec<(usize, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        if let Some(p) = draw(rng) {
            if seen.insert(p) {
                out.push(p);
            }
        }
    }
    out
}

fn layered_dag(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Result<Vec<(usize, usize)>, String> {
    let layers = ((n as f64).sqrt().round() as usize).clamp(1, n);
    // layer t holds vertices [start(t), start(t+1))
    let start = |t: usize| t * n / layers;
    let layer_of = |v: usize| (0..layers).find(|&t| v < start(t + 1)).unwrap();
    let spine = start(layers - 1);
    let mut capacity = 0usize;
    for a in 0..layers {
        let size_a = start(a + 1) - start(a);
        capacity += size_a * (n - start(a + 1));
    }
    if m < spine {
        return Err(format!("m = {m} is below the {spine} edges linking consecutive layers"));
    }
    if m > capacity {
        return Err(format!("m = {m} exceeds the {capacity} forward pairs"));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(m);
    for v in 0..spine {
        let t = layer_of(v);
        let u = rng.random_range(start(t + 1)..start(t + 2));
        seen.insert((v, u));
        out.push((v, u));
    }
    out.extend(random_pairs(rng, m - spine, |rng| {
        let u = rng.random_range(0..spine.max(1));
        let lu = layer_of(u);
        if lu + 1 >= layers {
            return None;
        }
        let v = rng.random_range(start(lu + 1)..n);
        (!seen.contains(&(u, v))).then_some((u, v))
    }));
    Ok(out)
}
