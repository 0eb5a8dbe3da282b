//! Hopsets for directed graphs.
//!
//! A `(β, ε)`-hopset of `G` is a set `H` of weighted edges such that for
//! every pair `u, v`, `dist_G(u, v) ≤ dist^(β)_{G ∪ H}(u, v) ≤ (1+ε) dist_G(u, v)`,
//! where `dist^(β)` only considers paths of at most `β` edges.
//!
//! The crate provides:
//! - [`hopset_unweighted`] / [`hopset_weighted`]: randomized recursive
//!   constructions whose edges carry exact distances;
//! - [`phopset`]: a rounded, iterated variant whose searches run on
//!   quantized weights;
//! - [`check_hopset`] and [`measure_hopbound`]: verification against an
//!   exact Dijkstra oracle using hop-limited Bellman–Ford.

pub mod edge_set;
pub mod error;
pub mod generate;
pub mod graph;
pub mod hopset;
pub mod instrument;
pub mod io;
pub mod labels;
pub mod levels;
pub mod parallel;
pub mod params;
pub mod recurse;
pub mod rng;
pub mod search;
pub mod verify;

pub use edge_set::{merge_min, EdgeSet};
pub use error::{GenerateError, GraphError, HopsetError, ParamsError, ParseError};
pub use generate::{generate, Family, GeneratorSpec};
pub use graph::{Edge, Graph, GraphView, InducedSubgraph, VertexId};
pub use hopset::{hopset_unweighted, hopset_weighted};
pub use instrument::{FrameKind, FrameTrace, Instrumentation, LevelCounters};
pub use io::{load_graph, HopsetSidecar};
pub use labels::{Label, LabelState, Side};
pub use levels::{assign_levels, assign_levels_keyed, LevelAssignment};
pub use parallel::{derive_parallel_params, phopset, quantize, ParallelParams, QuantizedGraph, RoundingScheme};
pub use params::{derive_params, Mode, ModeConfig, Params, PracticalConstants, ScaleRange};
pub use recurse::{hs_recurse, FrameOutput, RecurseContext, RecursionFrame};
pub use search::{bounded_search, related_set, select_radius, Direction, RadiusChoice, SearchResult};
pub use verify::{
    check_hopset, hop_limited_distances, measure_hopbound, oracle_distances, CheckOptions, HopLimitedDistances,
    PairSampling, VerificationReport,
};
