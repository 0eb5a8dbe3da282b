//! Sequential hopset drivers for unweighted and weighted graphs.

use rayon::prelude::*;

use crate::edge_set::EdgeSet;
use crate::error::HopsetError;
use crate::graph::{Graph, VertexId};
use crate::instrument::Instrumentation;
use crate::levels::{assign_levels_keyed, LevelAssignment};
use crate::params::Params;
use crate::recurse::{emit_shortcuts, hs_recurse, RecurseContext, RecursionFrame, ShortcutScratch};

/// Hopset of a unit-weight graph.
///
/// For each repetition a fresh level assignment is drawn; then for every
/// scale `j` in `params.scale_range` (default `[ceil(lg n / 2), lg n]`) the
/// top-level shortcutters (level at most `L`) link everything within
/// `2^{j+1}`, and the recursion runs on the whole graph with
/// `D = 2^j / k^c`.
pub fn hopset_unweighted(
    g: &Graph,
    params: &Params,
    seed: u64,
    instrumentation: &mut Instrumentation,
) -> Result<EdgeSet, HopsetError> {
    if let Some(e) = g.edges().find(|e| e.weight != 1.0) {
        return Err(HopsetError::NonUnitWeight {
            tail: e.source,
            head: e.target,
            weight: e.weight,
        });
    }
    let (lo, hi) = params.scale_range.resolve_unweighted(g.vertex_count());
    Ok(run_scales(g, params, seed, lo, hi, instrumentation))
}

/// Hopset of a graph with nonnegative weights.
///
/// Same as [`hopset_unweighted`] except the scales cover every possible path
/// weight, `j ∈ [-1, ceil(log2(nW))]`; the `j = -1` scale handles paths of
/// weight zero.
pub fn hopset_weighted(g: &Graph, params: &Params, seed: u64, instrumentation: &mut Instrumentation) -> EdgeSet {
    let (lo, hi) = params.scale_range.resolve_weighted(g.vertex_count(), g.max_weight());
    run_scales(g, params, seed, lo, hi, instrumentation)
}

fn run_scales(g: &Graph, params: &Params, seed: u64, lo: i64, hi: i64, instrumentation: &mut Instrumentation) -> EdgeSet {
    let mut out = EdgeSet::new();
    for repetition in 0..params.repetitions as u64 {
        let levels = assign_levels_keyed(g.vertex_count(), params, seed, repetition);
        for j in lo..=hi {
            let scale = 2f64.powi(j as i32);
            let ctx = RecurseContext {
                root: g,
                levels: &levels,
                params,
                seed,
                round: repetition,
                scale: j,
                trace: instrumentation.tracing(),
            };
            let (edges, instr) = shortcut_and_recurse(&ctx, 2.0 * scale, scale / params.k_pow_c);
            out.absorb(edges);
            instrumentation.merge(instr);
        }
    }
    out
}

/// One scale: top-level shortcutters with radius `shortcut_radius`, then the
/// recursion seeded with `d`. Shared with the rounded construction.
pub(crate) fn shortcut_and_recurse(
    ctx: &RecurseContext<'_>,
    shortcut_radius: f64,
    d: f64,
) -> (EdgeSet, Instrumentation) {
    let (mut edges, mut instr) = top_level_shortcuts(ctx.root, ctx.levels, ctx.params, shortcut_radius);
    if ctx.trace {
        instr.frames = Some(Vec::new());
    }
    let rec = hs_recurse(ctx, RecursionFrame::root(ctx.root, d));
    edges.absorb(rec.edges);
    instr.merge(rec.instrumentation);
    (edges, instr)
}

fn top_level_shortcuts(
    g: &Graph,
    levels: &LevelAssignment,
    params: &Params,
    radius: f64,
) -> (EdgeSet, Instrumentation) {
    let n = g.vertex_count();
    let shortcutters: Vec<VertexId> = (0..n).filter(|&v| levels.level(v) <= params.shortcut_depth).collect();
    let lists: Vec<_> = shortcutters
        .par_iter()
        .map_init(
            || ShortcutScratch::new(n, 0),
            |scratch, &s| emit_shortcuts(g, g, None, s, radius, scratch),
        )
        .collect();
    let mut edges = EdgeSet::new();
    let mut instr = Instrumentation::new();
    for list in lists {
        instr.note_search(list.furthest);
        instr.note_search(list.furthest);
        instr.top_level_shortcut_edges += list.edges.len();
        for e in list.edges {
            edges.insert(e.source, e.target, e.weight);
        }
    }
    (edges, instr)
}
