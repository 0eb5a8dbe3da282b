//! Directed weighted graphs stored as forward and reverse CSR arrays.

use std::collections::BTreeMap;

use crate::edge_set::EdgeSet;
use crate::error::GraphError;

/// Vertex identifier. Ids are dense in `[0, n)`.
pub type VertexId = usize;

/// One weighted edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    pub weight: f64,
}

impl Edge {
    pub fn new(source: VertexId, target: VertexId, weight: f64) -> Self {
        Self {
            source,
            target,
            weight,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    weights: Vec<f64>,
}

impl Csr {
    /// Builds the adjacency from `(from, to, w)` triples already sorted by
    /// `(from, to)` and free of duplicates.
    fn from_sorted(n: usize, triples: impl Iterator<Item = (VertexId, VertexId, f64)>) -> Self {
        let mut offsets = vec![0usize; n + 1];
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        for (from, to, w) in triples {
            offsets[from + 1] += 1;
            targets.push(to);
            weights.push(w);
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        Self {
            offsets,
            targets,
            weights,
        }
    }

    #[inline]
    fn range(&self, v: VertexId) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    fn find(&self, from: VertexId, to: VertexId) -> Option<f64> {
        let r = self.range(from);
        self.targets[r.clone()]
            .binary_search(&to)
            .ok()
            .map(|i| self.weights[r.start + i])
    }
}

/// Immutable directed graph with nonnegative edge weights.
///
/// Parallel edges are collapsed to their minimum weight at construction, so
/// every ordered pair carries at most one weight. Both the forward adjacency
/// and its transpose are stored, each with neighbor lists sorted by id.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    forward: Csr,
    reverse: Csr,
    max_weight: f64,
    min_positive_weight: f64,
    has_zero_weight: bool,
    scale: f64,
}

impl Graph {
    /// Builds a graph from an edge list.
    ///
    /// Rejects out-of-range endpoints and negative or non-finite weights.
    /// Weights are stored as given; see [`Graph::normalized`].
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut collapsed: BTreeMap<(VertexId, VertexId), f64> = BTreeMap::new();
        for e in edges {
            check_edge(n, e.source, e.target, e.weight)?;
            collapsed
                .entry((e.source, e.target))
                .and_modify(|w| *w = w.min(e.weight))
                .or_insert(e.weight);
        }
        Ok(Self::from_collapsed(n, collapsed, 1.0))
    }

    fn from_collapsed(n: usize, edges: BTreeMap<(VertexId, VertexId), f64>, scale: f64) -> Self {
        let mut max_weight = 0.0f64;
        let mut min_positive_weight = f64::INFINITY;
        let mut has_zero_weight = false;
        for &w in edges.values() {
            max_weight = max_weight.max(w);
            if w > 0.0 {
                min_positive_weight = min_positive_weight.min(w);
            } else {
                has_zero_weight = true;
            }
        }
        let forward = Csr::from_sorted(n, edges.iter().map(|(&(u, v), &w)| (u, v, w)));
        let mut transposed: Vec<(VertexId, VertexId, f64)> =
            edges.iter().map(|(&(u, v), &w)| (v, u, w)).collect();
        transposed.sort_by_key(|e| (e.0, e.1));
        let reverse = Csr::from_sorted(n, transposed.into_iter());
        Self {
            n,
            forward,
            reverse,
            max_weight,
            min_positive_weight,
            has_zero_weight,
            scale,
        }
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_collapsed(n, BTreeMap::new(), 1.0)
    }

    /// Scales all weights so that the lightest nonzero weight is at least 1.
    ///
    /// When the lightest positive weight `w` is below 1 every weight is
    /// multiplied by `1/w` and the factor is recorded in [`Graph::scale`].
    pub fn normalized(self) -> Self {
        if !(self.min_positive_weight < 1.0) {
            return self;
        }
        let factor = 1.0 / self.min_positive_weight;
        let edges = self
            .edges()
            .map(|e| ((e.source, e.target), e.weight * factor))
            .collect();
        Self::from_collapsed(self.n, edges, self.scale * factor)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.forward.targets.len()
    }

    /// Largest edge weight, 0 for an edgeless graph.
    pub fn max_weight(&self) -> f64 {
        self.max_weight
    }

    /// Smallest positive edge weight, `+inf` if there is none.
    pub fn min_positive_weight(&self) -> f64 {
        self.min_positive_weight
    }

    pub fn has_zero_weight_edge(&self) -> bool {
        self.has_zero_weight
    }

    /// Factor applied to the input weights by normalization (1 if none).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// True when every edge has weight exactly 1.
    pub fn is_unit_weighted(&self) -> bool {
        self.forward.weights.iter().all(|&w| w == 1.0)
    }

    /// Out-neighbors of `v` with edge weights, sorted by target id.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        let r = self.forward.range(v);
        self.forward.targets[r.clone()]
            .iter()
            .copied()
            .zip(self.forward.weights[r].iter().copied())
    }

    /// In-neighbors of `v` with edge weights, sorted by source id.
    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        let r = self.reverse.range(v);
        self.reverse.targets[r.clone()]
            .iter()
            .copied()
            .zip(self.reverse.weights[r].iter().copied())
    }

    /// Weight of the edge `(u, v)` if present.
    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.forward.find(u, v)
    }

    /// All edges in `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| self.out_edges(u).map(move |(v, w)| Edge::new(u, v, w)))
    }

    /// Forward view of this graph.
    pub fn view(&self) -> GraphView<'_> {
        GraphView {
            graph: self,
            reversed: false,
        }
    }

    /// View whose forward adjacency is this graph's reverse adjacency.
    pub fn transpose_view(&self) -> GraphView<'_> {
        self.view().transpose()
    }

    /// The graph with edge set `E ∪ H` under min-merge. `self` is unchanged.
    pub fn augment(&self, h: &EdgeSet) -> Result<Graph, GraphError> {
        let mut edges: BTreeMap<(VertexId, VertexId), f64> =
            self.edges().map(|e| ((e.source, e.target), e.weight)).collect();
        for e in h.iter() {
            check_edge(self.n, e.source, e.target, e.weight)?;
            edges
                .entry((e.source, e.target))
                .and_modify(|w| *w = w.min(e.weight))
                .or_insert(e.weight);
        }
        Ok(Self::from_collapsed(self.n, edges, self.scale))
    }

    /// Materializes the subgraph induced on `subset`.
    pub fn induce(&self, subset: &[VertexId]) -> Result<InducedSubgraph, GraphError> {
        InducedSubgraph::new(self, subset)
    }
}

fn check_edge(n: usize, u: VertexId, v: VertexId, w: f64) -> Result<(), GraphError> {
    for x in [u, v] {
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n });
        }
    }
    if w.is_nan() || w < 0.0 || w.is_infinite() {
        return Err(GraphError::InvalidWeight {
            tail: u,
            head: v,
            weight: w,
        });
    }
    Ok(())
}

/// A borrowed, possibly transposed, view of a [`Graph`].
#[derive(Clone, Copy, Debug)]
pub struct GraphView<'a> {
    graph: &'a Graph,
    reversed: bool,
}

impl<'a> GraphView<'a> {
    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn transpose(self) -> Self {
        Self {
            graph: self.graph,
            reversed: !self.reversed,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n
    }

    #[inline]
    pub fn out_slices(&self, v: VertexId) -> (&'a [VertexId], &'a [f64]) {
        let csr = if self.reversed {
            &self.graph.reverse
        } else {
            &self.graph.forward
        };
        let r = csr.range(v);
        (&csr.targets[r.clone()], &csr.weights[r])
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + 'a {
        let (t, w) = self.out_slices(v);
        t.iter().copied().zip(w.iter().copied())
    }
}

/// Subgraph induced on a vertex subset, with local ids `0..len` assigned in
/// ascending order of global id.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    graph: Graph,
    to_global: Vec<VertexId>,
}

impl InducedSubgraph {
    fn new(parent: &Graph, subset: &[VertexId]) -> Result<Self, GraphError> {
        let mut to_global = subset.to_vec();
        to_global.sort_unstable();
        to_global.dedup();
        if let Some(&bad) = to_global.iter().find(|&&v| v >= parent.n) {
            return Err(GraphError::VertexOutOfRange {
                vertex: bad,
                n: parent.n,
            });
        }
        let mut local = vec![usize::MAX; parent.n];
        for (i, &g) in to_global.iter().enumerate() {
            local[g] = i;
        }
        let mut edges = BTreeMap::new();
        for (i, &g) in to_global.iter().enumerate() {
            for (t, w) in parent.out_edges(g) {
                let lt = local[t];
                if lt != usize::MAX {
                    edges.insert((i, lt), w);
                }
            }
        }
        Ok(Self {
            graph: Graph::from_collapsed(to_global.len(), edges, parent.scale),
            to_global,
        })
    }

    /// Wraps a whole graph as its own induced subgraph (identity mapping).
    pub fn whole(graph: &Graph) -> Self {
        Self {
            graph: graph.clone(),
            to_global: (0..graph.n).collect(),
        }
    }

    /// The subgraph with local vertex ids.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.to_global.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_global.is_empty()
    }

    pub fn to_global(&self, local: VertexId) -> VertexId {
        self.to_global[local]
    }

    pub fn to_local(&self, global: VertexId) -> Option<VertexId> {
        self.to_global.binary_search(&global).ok()
    }

    /// Global ids in ascending order.
    pub fn global_ids(&self) -> &[VertexId] {
        &self.to_global
    }

    /// Induces a subgraph of this subgraph from local ids; the result maps
    /// straight to the original global ids.
    pub fn induce_local(&self, local_subset: &[VertexId]) -> Result<InducedSubgraph, GraphError> {
        let mut sub = InducedSubgraph::new(&self.graph, local_subset)?;
        for id in sub.to_global.iter_mut() {
            *id = self.to_global[*id];
        }
        Ok(sub)
    }
}
