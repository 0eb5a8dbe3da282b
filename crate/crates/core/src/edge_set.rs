//! Weighted edge collections with min-merge union.

use std::collections::btree_map::{BTreeMap, Entry};

use crate::graph::{Edge, VertexId};

/// At most one weight per ordered pair; inserting an existing pair keeps the
/// smaller weight. Iteration is in `(source, target)` order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EdgeSet {
    entries: BTreeMap<(VertexId, VertexId), f64>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `(u, v, w)` keeping the minimum weight. Returns true if the
    /// stored weight changed.
    pub fn insert(&mut self, u: VertexId, v: VertexId, w: f64) -> bool {
        match self.entries.entry((u, v)) {
            Entry::Vacant(slot) => {
                slot.insert(w);
                true
            }
            Entry::Occupied(mut slot) => {
                if w < *slot.get() {
                    slot.insert(w);
                    true
                } else {
                    false
                }
            }
        }
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> Option<f64> {
        self.entries.get(&(u, v)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.entries
            .iter()
            .map(|(&(u, v), &w)| Edge::new(u, v, w))
    }

    /// Min-merges `other` into `self`.
    pub fn merge_from(&mut self, other: &EdgeSet) {
        for (&(u, v), &w) in &other.entries {
            self.insert(u, v, w);
        }
    }

    /// Like [`EdgeSet::merge_from`] but consumes `other`, reusing the larger
    /// map.
    pub fn absorb(&mut self, mut other: EdgeSet) {
        if other.entries.len() > self.entries.len() {
            std::mem::swap(self, &mut other);
        }
        for ((u, v), w) in other.entries {
            self.insert(u, v, w);
        }
    }

    /// Applies `f` to every weight.
    pub fn map_weights(&mut self, mut f: impl FnMut(f64) -> f64) {
        for w in self.entries.values_mut() {
            *w = f(*w);
        }
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = Edge>>(iter: T) -> Self {
        let mut s = EdgeSet::new();
        for e in iter {
            s.insert(e.source, e.target, e.weight);
        }
        s
    }
}

/// Union keeping the minimum weight for every pair present in both.
pub fn merge_min(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    let mut out = a.clone();
    out.merge_from(b);
    out
}
