//! Counters and traces recorded while building a hopset.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::VertexId;
use crate::labels::Label;
use crate::search::RadiusChoice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameKind {
    Root,
    Core,
    Fringe,
}

/// Aggregates over all frames at one recursion level.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LevelCounters {
    pub subproblem_count: usize,
    pub core_subproblems: usize,
    pub fringe_subproblems: usize,
    /// Sum of frame sizes, counting replicated fringe vertices once per frame.
    pub frame_vertices: usize,
    pub pivot_count: usize,
    pub shortcutter_count: usize,
    /// Largest `|R+ ∪ R-|` seen by any pivot or shortcutter search.
    pub max_related_set: usize,
    /// One entry per pivot, in frame order.
    #[serde(skip)]
    pub fringe_sizes: Vec<usize>,
    /// Sum of `fringe_sizes`.
    pub fringe_vertices: usize,
    pub max_fringe: usize,
    pub shortcut_edges: usize,
}

impl LevelCounters {
    pub(crate) fn record_fringe(&mut self, size: usize) {
        self.fringe_sizes.push(size);
        self.fringe_vertices += size;
        self.max_fringe = self.max_fringe.max(size);
    }

    fn merge(&mut self, other: &LevelCounters) {
        self.subproblem_count += other.subproblem_count;
        self.core_subproblems += other.core_subproblems;
        self.fringe_subproblems += other.fringe_subproblems;
        self.frame_vertices += other.frame_vertices;
        self.pivot_count += other.pivot_count;
        self.shortcutter_count += other.shortcutter_count;
        self.max_related_set = self.max_related_set.max(other.max_related_set);
        self.fringe_sizes.extend_from_slice(&other.fringe_sizes);
        self.fringe_vertices += other.fringe_vertices;
        self.max_fringe = self.max_fringe.max(other.max_fringe);
        self.shortcut_edges += other.shortcut_edges;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PivotTrace {
    pub pivot: VertexId,
    pub choice: RadiusChoice,
    /// Global ids in the pivot's fringe subproblem.
    pub fringe: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexLabels {
    pub vertex: VertexId,
    pub labels: Vec<Label>,
    pub x: bool,
}

/// Everything one recursion frame decided. All vertex ids are global.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameTrace {
    pub round: u64,
    pub scale: i64,
    pub level: u32,
    pub kind: FrameKind,
    pub base_distance: f64,
    pub search_base: f64,
    pub vertices: Vec<VertexId>,
    /// True if the frame was skipped because no search could leave its
    /// source.
    pub vacuous: bool,
    pub pivots: Vec<PivotTrace>,
    pub shortcutters: Vec<VertexId>,
    pub labels: Vec<VertexLabels>,
    pub core_groups: Vec<Vec<VertexId>>,
}

/// Per-level counters plus an optional full frame trace.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Instrumentation {
    pub per_level: BTreeMap<u32, LevelCounters>,
    /// Edges emitted by top-level shortcutters (outside the recursion).
    pub top_level_shortcut_edges: usize,
    pub searches: u64,
    /// Largest distance settled by any search, in the units of the graph
    /// searched (quantized units for the rounded construction).
    pub max_settled_distance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frames: Option<Vec<FrameTrace>>,
}

impl Instrumentation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Also records a [`FrameTrace`] for every frame.
    pub fn with_trace() -> Self {
        Self {
            frames: Some(Vec::new()),
            ..Self::default()
        }
    }

    pub fn tracing(&self) -> bool {
        self.frames.is_some()
    }

    pub fn level_mut(&mut self, level: u32) -> &mut LevelCounters {
        self.per_level.entry(level).or_default()
    }

    pub(crate) fn note_search(&mut self, furthest: f64) {
        self.searches += 1;
        if furthest > self.max_settled_distance {
            self.max_settled_distance = furthest;
        }
    }

    /// Appends `other`; frame traces keep their order.
    pub fn merge(&mut self, other: Instrumentation) {
        for (level, c) in &other.per_level {
            self.level_mut(*level).merge(c);
        }
        self.top_level_shortcut_edges += other.top_level_shortcut_edges;
        self.searches += other.searches;
        self.max_settled_distance = self.max_settled_distance.max(other.max_settled_distance);
        if let (Some(mine), Some(theirs)) = (self.frames.as_mut(), other.frames) {
            mine.extend(theirs);
        }
    }

    /// Drops the per-frame detail, keeping the counters.
    pub fn without_frames(&self) -> Instrumentation {
        Instrumentation {
            frames: None,
            ..self.clone()
        }
    }
}
