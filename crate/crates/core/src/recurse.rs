//! The recursive partition-and-shortcut routine.
//!
//! A frame holds an induced subgraph, the seed distance `D` and a level `r`.
//! Level-`r` pivots pick a radius, stamp labels and carve out fringe
//! subproblems; shortcutters (level at most `r + L`) emit hopset edges;
//! the remaining unflagged vertices are grouped by label set and each group
//! becomes a core subproblem at level `r + 1`.
//!
//! Pivot and shortcutter searches within a frame are independent and run
//! on the rayon pool; child frames run in parallel too. Every random draw
//! is keyed (see [`crate::rng`]) and every reduction is applied in a fixed
//! order, so output does not depend on the thread count.

use rayon::prelude::*;

use crate::edge_set::EdgeSet;
use crate::graph::{Edge, Graph, InducedSubgraph, VertexId};
use crate::instrument::{FrameKind, FrameTrace, Instrumentation, PivotTrace, VertexLabels};
use crate::labels::LabelState;
use crate::levels::LevelAssignment;
use crate::params::Params;
use crate::rng::{derive_key, signed, stream, tag};
use crate::search::{fringe_set, scaled_radius, select_radius_with, Direction, RadiusChoice, Searcher};

/// One recursive subproblem.
#[derive(Clone, Debug)]
pub struct RecursionFrame {
    pub subgraph: InducedSubgraph,
    /// Seed distance `D`; the frame searches with `D_r = D / (λ^r k^{r/2})`.
    pub base_distance: f64,
    pub level: u32,
    pub kind: FrameKind,
    /// Stream key naming this frame, derived from its parent's key and its
    /// position among the parent's children.
    pub key: u64,
}

impl RecursionFrame {
    /// Level-0 frame covering all of `g`.
    pub fn root(g: &Graph, base_distance: f64) -> Self {
        Self {
            subgraph: InducedSubgraph::whole(g),
            base_distance,
            level: 0,
            kind: FrameKind::Root,
            key: 0,
        }
    }
}

/// State shared by every frame of one `(round, scale)` recursion.
pub struct RecurseContext<'a> {
    /// Graph whose vertex ids the frames' global ids refer to; emitted edge
    /// weights are exact distances in this graph.
    pub root: &'a Graph,
    pub levels: &'a LevelAssignment,
    pub params: &'a Params,
    pub seed: u64,
    /// Repetition (or sweep) index.
    pub round: u64,
    pub scale: i64,
    pub trace: bool,
}

/// Edges and counters produced by a frame and its descendants.
#[derive(Debug, Default)]
pub struct FrameOutput {
    pub edges: EdgeSet,
    pub instrumentation: Instrumentation,
}

/// Local and root-sized search scratch for shortcut emission.
pub(crate) struct ShortcutScratch {
    local: Searcher,
    root: Searcher,
}

impl ShortcutScratch {
    pub(crate) fn new(local_n: usize, root_n: usize) -> Self {
        Self {
            local: Searcher::new(local_n),
            root: Searcher::new(root_n),
        }
    }
}

/// Result of one shortcutter's forward and backward searches.
pub(crate) struct Shortcuts {
    pub edges: Vec<Edge>,
    pub related: usize,
    pub furthest: f64,
}

/// Searches forward and backward from `s` (a local id of `local`) to
/// `radius` and emits `(s, u)` / `(u, s)` for every reached `u`.
///
/// Membership comes from the search in `local`; weights are exact
/// distances in `root`, which is at least as well connected. `to_global`
/// maps local ids to root ids (`None`: `local` is `root`). Self pairs and
/// pairs already joined in `root` by an edge of weight at most the shortcut
/// weight are skipped.
pub(crate) fn emit_shortcuts(
    root: &Graph,
    local: &Graph,
    to_global: Option<&[VertexId]>,
    s: VertexId,
    radius: f64,
    scratch: &mut ShortcutScratch,
) -> Shortcuts {
    let global = |v: VertexId| to_global.map_or(v, |m| m[v]);
    let gs = global(s);
    let mut edges = Vec::new();
    let mut furthest = 0.0f64;
    let mut related = 0usize;
    for direction in [Direction::Forward, Direction::Backward] {
        let reached = scratch.local.search(local, s, radius, direction).reached;
        furthest = furthest.max(reached.last().map_or(0.0, |r| r.1));
        related += reached.len();
        if reached.len() <= 1 {
            continue;
        }
        let exact = |scratch: &ShortcutScratch, v: VertexId, d: f64| -> f64 {
            match to_global {
                None => d,
                Some(_) => scratch
                    .root
                    .settled_distance(v)
                    .expect("root distance never exceeds subgraph distance"),
            }
        };
        if to_global.is_some() {
            scratch.root.search(root, gs, radius, direction);
        }
        for &(u, d) in &reached {
            if u == s {
                continue;
            }
            let gu = global(u);
            let w = exact(scratch, gu, d);
            let (a, b) = match direction {
                Direction::Forward => (gs, gu),
                Direction::Backward => (gu, gs),
            };
            if root.edge_weight(a, b).is_some_and(|ew| ew <= w) {
                continue;
            }
            edges.push(Edge::new(a, b, w));
        }
    }
    // the source is counted once per direction
    Shortcuts {
        edges,
        related: related.saturating_sub(1),
        furthest,
    }
}

struct PivotOutcome {
    pivot: VertexId,
    choice: RadiusChoice,
    descendants: Vec<VertexId>,
    ancestors: Vec<VertexId>,
    fringe: Vec<VertexId>,
    related: usize,
    furthest: f64,
}

/// Runs one frame and, recursively, all of its subproblems.
pub fn hs_recurse(ctx: &RecurseContext<'_>, frame: RecursionFrame) -> FrameOutput {
    let mut out = FrameOutput {
        edges: EdgeSet::new(),
        instrumentation: if ctx.trace {
            Instrumentation::with_trace()
        } else {
            Instrumentation::new()
        },
    };
    let params = ctx.params;
    let sub = &frame.subgraph;
    let g = sub.graph();
    let n = sub.len();
    let r = frame.level;
    if n == 0 || r > params.max_level {
        return out;
    }
    let d_r = params.base_distance(frame.base_distance, r);
    let to_global = |v: VertexId| sub.to_global(v);
    let pivots: Vec<VertexId> = (0..n).filter(|&v| ctx.levels.level(to_global(v)) == r).collect();
    let shortcutters: Vec<VertexId> = (0..n)
        .filter(|&v| ctx.levels.level(to_global(v)) <= r + params.shortcut_depth)
        .collect();

    {
        let c = out.instrumentation.level_mut(r);
        c.subproblem_count += 1;
        match frame.kind {
            FrameKind::Core => c.core_subproblems += 1,
            FrameKind::Fringe => c.fringe_subproblems += 1,
            FrameKind::Root => {}
        }
        c.frame_vertices += n;
        c.pivot_count += pivots.len();
        c.shortcutter_count += shortcutters.len();
    }

    // No search can leave its source: nothing below this frame does work.
    let vacuous = !(d_r > 0.0)
        || (!g.has_zero_weight_edge() && scaled_radius(params.rho_max + 1, d_r) < g.min_positive_weight());
    let mut trace = ctx.trace.then(|| FrameTrace {
        round: ctx.round,
        scale: ctx.scale,
        level: r,
        kind: frame.kind,
        base_distance: frame.base_distance,
        search_base: d_r,
        vertices: sub.global_ids().to_vec(),
        vacuous,
        pivots: Vec::new(),
        shortcutters: shortcutters.iter().map(|&v| to_global(v)).collect(),
        labels: Vec::new(),
        core_groups: Vec::new(),
    });
    if vacuous {
        if let (Some(t), Some(frames)) = (trace, out.instrumentation.frames.as_mut()) {
            frames.push(t);
        }
        return out;
    }

    // Pivots: radius choice, labels and fringe sets.
    let outcomes: Vec<PivotOutcome> = pivots
        .par_iter()
        .map_init(
            || Searcher::new(n),
            |searcher, &p| {
                let mut rng = stream(
                    ctx.seed,
                    &[tag::SIGMA, ctx.round, signed(ctx.scale), frame.key, to_global(p) as u64],
                );
                let rs = select_radius_with(searcher, g, p, d_r, params, &mut rng);
                let radius = scaled_radius(rs.choice.rho, d_r);
                let within = |res: &crate::search::SearchResult| -> Vec<VertexId> {
                    res.reached.iter().take_while(|e| e.1 <= radius).map(|e| e.0).collect()
                };
                let descendants = within(&rs.forward);
                let ancestors = within(&rs.backward);
                let fringe = fringe_set(&rs.forward, &rs.backward, rs.choice.rho, d_r);
                let furthest = rs
                    .forward
                    .reached
                    .last()
                    .map_or(0.0, |e| e.1)
                    .max(rs.backward.reached.last().map_or(0.0, |e| e.1));
                PivotOutcome {
                    pivot: p,
                    choice: rs.choice,
                    related: descendants.len() + ancestors.len() - 1,
                    descendants,
                    ancestors,
                    fringe,
                    furthest,
                }
            },
        )
        .collect();

    let mut labels = LabelState::new(n);
    for o in &outcomes {
        labels.apply(to_global(o.pivot), &o.descendants, &o.ancestors);
        out.instrumentation.note_search(o.furthest);
        out.instrumentation.note_search(o.furthest);
        let c = out.instrumentation.level_mut(r);
        c.max_related_set = c.max_related_set.max(o.related);
        c.record_fringe(o.fringe.len());
    }

    // Shortcutters.
    let shortcut_radius = scaled_radius(params.rho_max, d_r);
    let is_root = n == ctx.root.vertex_count();
    let map = (!is_root).then(|| sub.global_ids());
    let shortcut_lists: Vec<Shortcuts> = shortcutters
        .par_iter()
        .map_init(
            || ShortcutScratch::new(n, if is_root { 0 } else { ctx.root.vertex_count() }),
            |scratch, &s| emit_shortcuts(ctx.root, g, map, s, shortcut_radius, scratch),
        )
        .collect();
    for list in shortcut_lists {
        out.instrumentation.note_search(list.furthest);
        out.instrumentation.note_search(list.furthest);
        let c = out.instrumentation.level_mut(r);
        c.max_related_set = c.max_related_set.max(list.related);
        c.shortcut_edges += list.edges.len();
        for e in list.edges {
            out.edges.insert(e.source, e.target, e.weight);
        }
    }

    // Partition: X-flagged vertices (every pivot among them) are dropped.
    let groups = labels.partition();

    if let Some(t) = trace.as_mut() {
        t.pivots = outcomes
            .iter()
            .map(|o| PivotTrace {
                pivot: to_global(o.pivot),
                choice: o.choice,
                fringe: o.fringe.iter().map(|&v| to_global(v)).collect(),
            })
            .collect();
        t.labels = (0..n)
            .map(|v| VertexLabels {
                vertex: to_global(v),
                labels: labels.labels(v).to_vec(),
                x: labels.is_x(v),
            })
            .collect();
        t.core_groups = groups
            .iter()
            .map(|grp| grp.iter().map(|&v| to_global(v)).collect())
            .collect();
    }
    if let (Some(t), Some(frames)) = (trace, out.instrumentation.frames.as_mut()) {
        frames.push(t);
    }

    if r >= params.max_level {
        return out;
    }

    let mut children: Vec<RecursionFrame> = Vec::new();
    let child = |subset: &[VertexId], kind: FrameKind, ordinal: usize| RecursionFrame {
        subgraph: sub.induce_local(subset).expect("local ids are in range"),
        base_distance: frame.base_distance,
        level: r + 1,
        kind,
        key: derive_key(frame.key, &[tag::FRAME, ordinal as u64]),
    };
    for o in &outcomes {
        if !o.fringe.is_empty() {
            children.push(child(&o.fringe, FrameKind::Fringe, children.len()));
        }
    }
    for grp in &groups {
        children.push(child(grp, FrameKind::Core, children.len()));
    }

    let results: Vec<FrameOutput> = children.into_par_iter().map(|c| hs_recurse(ctx, c)).collect();
    for res in results {
        out.edges.absorb(res.edges);
        out.instrumentation.merge(res.instrumentation);
    }
    out
}
