//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use hopset_core::{Edge, Graph, PracticalConstants};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random digraph with `m` edge draws (duplicates collapse), integer weights
/// in `[1, max_w]`, and roughly `zero_share` of them set to 0.
pub fn random_graph(n: usize, m: usize, max_w: u32, zero_share: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Edge> = (0..m)
        .map(|_| {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            let w = if rng.random_bool(zero_share) {
                0.0
            } else {
                rng.random_range(1..=max_w) as f64
            };
            Edge::new(u, v, w)
        })
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Random DAG: edges only go from lower to higher ids.
pub fn random_dag(n: usize, m: usize, max_w: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Edge> = (0..m)
        .map(|_| {
            let a = rng.random_range(0..n - 1);
            let b = rng.random_range(a + 1..n);
            Edge::new(a, b, rng.random_range(1..=max_w) as f64)
        })
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

/// All-pairs distances by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for e in g.edges() {
        let cell = &mut d[e.source][e.target];
        *cell = cell.min(e.weight);
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let via = dik + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Single-source distances by quadratic-time Dijkstra over an edge list.
pub fn array_dijkstra(g: &Graph, s: usize) -> Vec<f64> {
    let n = g.vertex_count();
    let edges: Vec<Edge> = g.edges().collect();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[s] = 0.0;
    loop {
        let next = (0..n)
            .filter(|&v| !done[v] && dist[v].is_finite())
            .min_by(|&a, &b| dist[a].total_cmp(&dist[b]));
        let Some(u) = next else { break };
        done[u] = true;
        for e in edges.iter().filter(|e| e.source == u) {
            dist[e.target] = dist[e.target].min(dist[u] + e.weight);
        }
    }
    dist
}

/// `dist^(β)` from `s` by the recurrence over hop counts.
pub fn bellman_ford_hops(g: &Graph, s: usize, beta: usize) -> Vec<f64> {
    let n = g.vertex_count();
    let mut d = vec![f64::INFINITY; n];
    d[s] = 0.0;
    for _ in 0..beta {
        let prev = d.clone();
        for e in g.edges() {
            d[e.target] = d[e.target].min(prev[e.source] + e.weight);
        }
    }
    d
}

pub fn practical(shortcut_depth: u32, k_pow_c: f64) -> PracticalConstants {
    PracticalConstants {
        shortcut_depth,
        k_pow_c,
        ..PracticalConstants::default()
    }
}
