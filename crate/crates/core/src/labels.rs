//! Pivot labels and the label partition.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::VertexId;

/// Which side of a pivot's search reached the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// Reached by the backward search: the vertex can reach the pivot.
    Anc,
    /// Reached by the forward search: the pivot can reach the vertex.
    Des,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub pivot: VertexId,
    pub side: Side,
}

/// Labels stamped on the vertices of one frame, indexed by local id.
///
/// Label lists are kept sorted by `(pivot, side)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelState {
    labels: Vec<Vec<Label>>,
    x_flag: Vec<bool>,
}

impl LabelState {
    pub fn new(n: usize) -> Self {
        Self {
            labels: vec![Vec::new(); n],
            x_flag: vec![false; n],
        }
    }

    /// Stamps the result of one pivot's searches. `pivot` is the label id
    /// (a global vertex id); `descendants` and `ancestors` are local ids.
    /// Vertices in both lists receive the X flag.
    pub fn apply(&mut self, pivot: VertexId, descendants: &[VertexId], ancestors: &[VertexId]) {
        for &v in descendants {
            insert_sorted(&mut self.labels[v], Label { pivot, side: Side::Des });
        }
        for &v in ancestors {
            let list = &mut self.labels[v];
            insert_sorted(list, Label { pivot, side: Side::Anc });
            if list.binary_search(&Label { pivot, side: Side::Des }).is_ok() {
                self.x_flag[v] = true;
            }
        }
    }

    pub fn labels(&self, v: VertexId) -> &[Label] {
        &self.labels[v]
    }

    pub fn is_x(&self, v: VertexId) -> bool {
        self.x_flag[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Groups the X-free vertices by identical label set. Groups are ordered
    /// by their label list; members are ascending. The group with no labels
    /// (if any vertex is unlabeled) is first.
    pub fn partition(&self) -> Vec<Vec<VertexId>> {
        let mut groups: BTreeMap<&[Label], Vec<VertexId>> = BTreeMap::new();
        for v in 0..self.labels.len() {
            if !self.x_flag[v] {
                groups.entry(self.labels[v].as_slice()).or_default().push(v);
            }
        }
        groups.into_values().collect()
    }
}

fn insert_sorted(list: &mut Vec<Label>, label: Label) {
    if let Err(pos) = list.binary_search(&label) {
        list.insert(pos, label);
    }
}
