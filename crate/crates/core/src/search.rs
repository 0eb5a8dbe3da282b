//! Distance-bounded Dijkstra searches, related sets and radius selection.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphView, VertexId};
use crate::params::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// Vertices within distance `bound` of `source` (or from which `source` is
/// within `bound`, for backward searches), with exact distances.
///
/// `reached` is in settle order: nondecreasing distance, ties by vertex id.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub source: VertexId,
    pub bound: f64,
    pub direction: Direction,
    pub reached: Vec<(VertexId, f64)>,
}

impl SearchResult {
    /// Distance recorded for `v`. Linear in the number of reached vertices.
    pub fn distance(&self, v: VertexId) -> Option<f64> {
        self.reached.iter().find(|&&(u, _)| u == v).map(|&(_, d)| d)
    }

    pub fn len(&self) -> usize {
        self.reached.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reached.is_empty()
    }

    /// Restricts the result to distances `<= bound`.
    pub fn truncated(&self, bound: f64) -> SearchResult {
        let end = self.reached.partition_point(|&(_, d)| d <= bound);
        SearchResult {
            source: self.source,
            bound,
            direction: self.direction,
            reached: self.reached[..end].to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: VertexId,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (dist, vertex)
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reusable scratch space for repeated searches on graphs of one size.
///
/// Reset cost is proportional to the number of vertices touched by the
/// previous search, not to the graph size.
pub struct Searcher {
    dist: Vec<f64>,
    settled: Vec<bool>,
    touched: Vec<VertexId>,
    heap: BinaryHeap<HeapEntry>,
}

impl Searcher {
    pub fn new(n: usize) -> Self {
        Self {
            dist: vec![f64::INFINITY; n],
            settled: vec![false; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = f64::INFINITY;
            self.settled[v] = false;
        }
        self.touched.clear();
        self.heap.clear();
    }

    /// Dijkstra from `source` over `view`, never settling a vertex whose
    /// tentative distance exceeds `bound`.
    pub fn run(&mut self, view: GraphView<'_>, source: VertexId, bound: f64) -> Vec<(VertexId, f64)> {
        assert!(source < view.vertex_count(), "search source {source} out of range");
        if self.dist.len() < view.vertex_count() {
            *self = Searcher::new(view.vertex_count());
        }
        self.reset();
        let mut out = Vec::new();
        if !(bound >= 0.0) {
            return out;
        }
        self.dist[source] = 0.0;
        self.touched.push(source);
        self.heap.push(HeapEntry {
            dist: 0.0,
            vertex: source,
        });
        while let Some(HeapEntry { dist, vertex }) = self.heap.pop() {
            if self.settled[vertex] || dist > self.dist[vertex] {
                continue;
            }
            self.settled[vertex] = true;
            out.push((vertex, dist));
            let (targets, weights) = view.out_slices(vertex);
            for (&t, &w) in targets.iter().zip(weights) {
                let nd = dist + w;
                if nd > bound || self.settled[t] {
                    continue;
                }
                if nd < self.dist[t] {
                    if self.dist[t] == f64::INFINITY {
                        self.touched.push(t);
                    }
                    self.dist[t] = nd;
                    self.heap.push(HeapEntry { dist: nd, vertex: t });
                }
            }
        }
        out
    }

    /// Exact distance of `v` if the previous search settled it.
    pub fn settled_distance(&self, v: VertexId) -> Option<f64> {
        self.settled.get(v).copied().unwrap_or(false).then(|| self.dist[v])
    }

    pub fn search(
        &mut self,
        g: &Graph,
        source: VertexId,
        bound: f64,
        direction: Direction,
    ) -> SearchResult {
        let view = match direction {
            Direction::Forward => g.view(),
            Direction::Backward => g.transpose_view(),
        };
        SearchResult {
            source,
            bound,
            direction,
            reached: self.run(view, source, bound),
        }
    }
}

/// `R+_d(g, source)` (forward) or `R-_d(g, source)` (backward) with exact
/// distances.
///
/// # Panics
/// If `source` is not a vertex of `g`.
pub fn bounded_search(g: &Graph, source: VertexId, bound: f64, direction: Direction) -> SearchResult {
    Searcher::new(g.vertex_count()).search(g, source, bound, direction)
}

/// Forward search over an arbitrary view; on a transposed view this is a
/// backward search of the underlying graph.
pub fn bounded_search_view(view: GraphView<'_>, source: VertexId, bound: f64) -> Vec<(VertexId, f64)> {
    Searcher::new(view.vertex_count()).run(view, source, bound)
}

/// Both directional searches from `source`; the union of their reached
/// sets is `R_d(g, source)`.
pub fn related_set(g: &Graph, source: VertexId, bound: f64) -> (SearchResult, SearchResult) {
    let mut s = Searcher::new(g.vertex_count());
    let fwd = s.search(g, source, bound, Direction::Forward);
    let bwd = s.search(g, source, bound, Direction::Backward);
    (fwd, bwd)
}

/// Scalar radius `rho * d_r`. All radius comparisons go through this so
/// that callers and checkers agree bit-for-bit.
#[inline]
pub fn scaled_radius(rho: u64, d_r: f64) -> f64 {
    rho as f64 * d_r
}

/// Outcome of the fringe-minimizing radius selection for one pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusChoice {
    pub sigma: u64,
    pub rho: u64,
    pub fringe_size: usize,
}

/// The radius choice together with the forward and backward searches it was
/// computed from, both run to `(max candidate + 1) * d_r`.
pub(crate) struct RadiusSearch {
    pub choice: RadiusChoice,
    pub forward: SearchResult,
    pub backward: SearchResult,
}

/// Draws a subinterval index `sigma` uniformly from `[1, interval_count]` and
/// returns the integer `rho` in that subinterval minimizing
/// `|R_{(rho+1)d_r} \ R_{(rho-1)d_r}|`, ties to the smallest `rho`.
///
/// # Panics
/// If `d_r` is not positive or `pivot` is not a vertex of `g`.
pub fn select_radius<R: Rng + ?Sized>(
    g: &Graph,
    pivot: VertexId,
    d_r: f64,
    params: &Params,
    rng: &mut R,
) -> RadiusChoice {
    let mut searcher = Searcher::new(g.vertex_count());
    select_radius_with(&mut searcher, g, pivot, d_r, params, rng).choice
}

pub(crate) fn select_radius_with<R: Rng + ?Sized>(
    searcher: &mut Searcher,
    g: &Graph,
    pivot: VertexId,
    d_r: f64,
    params: &Params,
    rng: &mut R,
) -> RadiusSearch {
    assert!(d_r > 0.0, "base search distance must be positive, got {d_r}");
    let sigma = rng.random_range(1..=params.interval_count);
    let candidates = params.subinterval(sigma);
    let outer = scaled_radius(candidates.end, d_r);
    let forward = searcher.search(g, pivot, outer, Direction::Forward);
    let backward = searcher.search(g, pivot, outer, Direction::Backward);

    let mut nearest = nearest_distances(&forward, &backward);
    nearest.sort_by(f64::total_cmp);
    let within = |r: f64| nearest.partition_point(|&d| d <= r);

    let mut best: Option<RadiusChoice> = None;
    for rho in candidates {
        let fringe_size = within(scaled_radius(rho + 1, d_r)) - within(scaled_radius(rho - 1, d_r));
        if best.is_none_or(|b| fringe_size < b.fringe_size) {
            best = Some(RadiusChoice {
                sigma,
                rho,
                fringe_size,
            });
        }
    }
    RadiusSearch {
        choice: best.expect("subintervals are nonempty"),
        forward,
        backward,
    }
}

/// Per-vertex `min(dist(p, v), dist(v, p))` over the union of both searches.
fn nearest_distances(forward: &SearchResult, backward: &SearchResult) -> Vec<f64> {
    let mut all: Vec<(VertexId, f64)> = forward
        .reached
        .iter()
        .chain(backward.reached.iter())
        .copied()
        .collect();
    all.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    all.dedup_by_key(|e| e.0);
    all.into_iter().map(|(_, d)| d).collect()
}

/// Vertices `v` of the union of `forward` and `backward` whose nearer
/// directional distance lies in `((rho-1) d_r, (rho+1) d_r]`, ascending.
pub(crate) fn fringe_set(forward: &SearchResult, backward: &SearchResult, rho: u64, d_r: f64) -> Vec<VertexId> {
    let lo = scaled_radius(rho - 1, d_r);
    let hi = scaled_radius(rho + 1, d_r);
    let mut all: Vec<(VertexId, f64)> = forward
        .reached
        .iter()
        .chain(backward.reached.iter())
        .copied()
        .collect();
    all.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    all.dedup_by_key(|e| e.0);
    all.into_iter()
        .filter(|&(_, d)| d > lo && d <= hi)
        .map(|(v, _)| v)
        .collect()
}
