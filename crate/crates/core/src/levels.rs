//! Per-vertex pivot levels.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::VertexId;
use crate::params::Params;
use crate::rng::{stream, tag};

/// `level(v)` is the recursion level at which `v` acts as a pivot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelAssignment {
    levels: Vec<u32>,
}

impl LevelAssignment {
    pub fn from_levels(levels: Vec<u32>) -> Self {
        Self { levels }
    }

    pub fn level(&self, v: VertexId) -> u32 {
        self.levels[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Number of vertices at each level `0..=max_level`.
    pub fn histogram(&self, max_level: u32) -> Vec<usize> {
        let mut h = vec![0; max_level as usize + 1];
        for &l in &self.levels {
            h[l as usize] += 1;
        }
        h
    }
}

/// Scans `i = 0, 1, ...` and stops at the first success of a coin with
/// probability `params.level_probability(i)`; that probability is 1 at
/// `max_level`, so every vertex gets a level.
pub fn draw_level<R: Rng + ?Sized>(params: &Params, rng: &mut R) -> u32 {
    for i in 0..params.max_level {
        let p = params.level_probability(i);
        if p >= 1.0 || rng.random_bool(p) {
            return i;
        }
    }
    params.max_level
}

/// Draws all `n` levels from one stream.
pub fn assign_levels<R: Rng + ?Sized>(n: usize, params: &Params, rng: &mut R) -> LevelAssignment {
    LevelAssignment {
        levels: (0..n).map(|_| draw_level(params, rng)).collect(),
    }
}

/// Draws each vertex's level from its own stream keyed by
/// `(seed, LEVELS, round, vertex)`, where `round` names the repetition or
/// sweep.
pub fn assign_levels_keyed(n: usize, params: &Params, seed: u64, round: u64) -> LevelAssignment {
    LevelAssignment {
        levels: (0..n)
            .into_par_iter()
            .map(|v| draw_level(params, &mut stream(seed, &[tag::LEVELS, round, v as u64])))
            .collect(),
    }
}
