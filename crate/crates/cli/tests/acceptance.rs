//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every check compares against oracles defined in this
//! file rather than the library's own verifier.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use hopset_cli::{run_experiment, Algorithm, ExperimentConfig, GraphInput};
use hopset_core::instrument::FrameTrace;
use hopset_core::search::scaled_radius;
use hopset_core::{
    derive_params, generate, hop_limited_distances, hopset_unweighted, hopset_weighted, measure_hopbound, phopset,
    quantize, select_radius, Edge, EdgeSet, Family, GeneratorSpec, Graph, Instrumentation, ModeConfig, PairSampling,
    ParallelParams, Params, PracticalConstants, RoundingScheme,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

// ---------------------------------------------------------------------------
// Oracles

fn adjacency(g: &Graph) -> Vec<Vec<(usize, f64)>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        adj[e.source].push((e.target, e.weight));
    }
    adj
}

#[derive(PartialEq)]
struct Key(f64);
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Key {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0)
    }
}

fn dijkstra(adj: &[Vec<(usize, f64)>], s: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[s] = 0.0;
    heap.push(Reverse((Key(0.0), s)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            if d + w < dist[v] {
                dist[v] = d + w;
                heap.push(Reverse((Key(d + w), v)));
            }
        }
    }
    dist
}

fn all_pairs(g: &Graph) -> Vec<Vec<f64>> {
    let adj = adjacency(g);
    (0..g.vertex_count()).map(|s| dijkstra(&adj, s)).collect()
}

/// `dist^(β)` by the hop-count recurrence, relaxing only from vertices that
/// improved in the previous round.
fn bellman_ford(g: &Graph, s: usize, beta: usize) -> Vec<f64> {
    bellman_ford_adj(&adjacency(g), s, beta)
}

fn bellman_ford_adj(adj: &[Vec<(usize, f64)>], s: usize, beta: usize) -> Vec<f64> {
    let mut d = vec![f64::INFINITY; adj.len()];
    d[s] = 0.0;
    let mut frontier = vec![s];
    let mut in_next = vec![false; adj.len()];
    for _ in 0..beta {
        if frontier.is_empty() {
            break;
        }
        let prev = d.clone();
        let mut next = Vec::new();
        for &u in &frontier {
            for &(v, w) in &adj[u] {
                if prev[u] + w < d[v] {
                    d[v] = prev[u] + w;
                    if !in_next[v] {
                        in_next[v] = true;
                        next.push(v);
                    }
                }
            }
        }
        for &v in &next {
            in_next[v] = false;
        }
        frontier = next;
    }
    d
}

fn augment(g: &Graph, h: &EdgeSet) -> Graph {
    Graph::from_edges(g.vertex_count(), g.edges().chain(h.iter())).unwrap()
}

fn practical() -> PracticalConstants {
    PracticalConstants::default()
}

fn params(n: usize) -> Params {
    derive_params(n, 0.0, 2, 2, &ModeConfig::Practical(practical())).unwrap()
}

// ---------------------------------------------------------------------------
// Corpus shared by the validity, preservation and size criteria

#[derive(Clone, Copy, Debug)]
enum Weights {
    Unit,
    Integer,
    WithZeros,
    Real,
}

struct CorpusGraph {
    family: Family,
    weights: Weights,
    seed: u64,
    graph: Graph,
}

fn corpus() -> Vec<CorpusGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..50u64)
        .map(|i| {
            let family = Family::ALL[i as usize % Family::ALL.len()];
            let weights = [Weights::Unit, Weights::Integer, Weights::WithZeros, Weights::Real][(i / 6) as usize % 4];
            let n = rng.random_range(16..=200);
            let seed = 1000 + i;
            let w = match weights {
                Weights::Unit => 1,
                Weights::WithZeros => 10,
                _ => 100,
            };
            let base = generate(family, n, None, w, seed).unwrap();
            let graph = match weights {
                Weights::Unit | Weights::Integer => base,
                Weights::WithZeros => Graph::from_edges(
                    n,
                    base.edges().map(|e| Edge::new(e.source, e.target, if e.weight == 1.0 { 0.0 } else { e.weight })),
                )
                .unwrap(),
                Weights::Real => {
                    Graph::from_edges(n, base.edges().map(|e| Edge::new(e.source, e.target, e.weight * 0.173)))
                        .unwrap()
                        .normalized()
                }
            };
            CorpusGraph {
                family,
                weights,
                seed,
                graph,
            }
        })
        .collect()
}

struct Built {
    name: &'static str,
    graph: usize,
    hopset: EdgeSet,
    exact: bool,
}

fn parallel_params(n: usize) -> ParallelParams {
    ParallelParams::practical(n, 16.0, 0.05, practical().shortcut_depth)
}

fn build_corpus(corpus: &[CorpusGraph]) -> Vec<Built> {
    let mut out = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        let n = c.graph.vertex_count();
        let p = params(n);
        let mut instr = Instrumentation::new();
        if matches!(c.weights, Weights::Unit) {
            let hopset = hopset_unweighted(&c.graph, &p, c.seed, &mut instr).unwrap();
            out.push(Built { name: "unweighted", graph: i, hopset, exact: true });
        }
        let hopset = hopset_weighted(&c.graph, &p, c.seed, &mut instr);
        out.push(Built { name: "weighted", graph: i, hopset, exact: true });
        let hopset = phopset(&c.graph, &p, &parallel_params(n), c.seed, &mut instr).unwrap();
        out.push(Built { name: "parallel", graph: i, hopset, exact: false });
    }
    out
}

// ---------------------------------------------------------------------------
// Criteria

fn validity(corpus: &[CorpusGraph], built: &[Built]) -> Outcome {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for b in built {
        let c = &corpus[b.graph];
        let d = all_pairs(&c.graph);
        let real = matches!(c.weights, Weights::Real);
        for e in b.hopset.iter() {
            checked += 1;
            let truth = d[e.source][e.target];
            let ok = if b.exact && real {
                (e.weight - truth).abs() <= 1e-9 * truth.abs()
            } else if b.exact {
                e.weight == truth
            } else {
                e.weight >= truth
            };
            if !ok {
                failures.push(format!(
                    "{} on graph {} ({:?}): ({}, {}) weight {} vs distance {}",
                    b.name, b.graph, c.family, e.source, e.target, e.weight, truth
                ));
            }
        }
    }
    let counts: BTreeMap<&str, usize> = built.iter().fold(BTreeMap::new(), |mut m, b| {
        *m.entry(b.name).or_default() += 1;
        m
    });
    match failures.first() {
        None => Ok(format!("{} graphs, hopsets {counts:?}, {checked} edges match the oracle", corpus.len())),
        Some(f) => Err(format!("{} bad edges; first: {f}", failures.len())),
    }
}

fn preservation(corpus: &[CorpusGraph], built: &[Built]) -> Outcome {
    for b in built {
        let g = &corpus[b.graph].graph;
        // Shortcut weights on real-weighted graphs are path sums taken in a
        // different order than the oracle's, so they agree to rounding only.
        let tol = if matches!(corpus[b.graph].weights, Weights::Real) { 1e-9 } else { 0.0 };
        let same = |a: f64, b: f64| a == b || (a - b).abs() <= tol * a.abs();
        let before = all_pairs(g);
        let after = all_pairs(&augment(g, &b.hopset));
        let n = g.vertex_count();
        if let Some((u, v)) =
            (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).find(|&(u, v)| !same(before[u][v], after[u][v]))
        {
            return Err(format!(
                "{} hopset of graph {}: dist({u},{v}) {} became {}",
                b.name, b.graph, before[u][v], after[u][v]
            ));
        }
    }
    Ok(format!("{} augmented graphs keep all-pairs distances (real weights to 1e-9 relative)", built.len()))
}

fn hop_limited() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sources = 0;
    for i in 0..20u64 {
        let family = Family::ALL[i as usize % Family::ALL.len()];
        let n = rng.random_range(10..=100);
        let g = generate(family, n, None, if i % 2 == 0 { 1 } else { 50 }, i).unwrap();
        let adj = adjacency(&g);
        for s in 0..n {
            sources += 1;
            let exact = dijkstra(&adj, s);
            let full = hop_limited_distances(&g, s, n - 1).dist;
            if full != exact {
                return Err(format!("graph {i} source {s}: β = n−1 differs from Dijkstra"));
            }
            let mut prev: Option<Vec<f64>> = None;
            let mut beta = 1;
            while beta < n {
                let d = hop_limited_distances(&g, s, beta).dist;
                if d != bellman_ford(&g, s, beta) {
                    return Err(format!("graph {i} source {s}: β = {beta} differs from the recurrence"));
                }
                if prev.as_ref().is_some_and(|p| d.iter().zip(p).any(|(a, b)| a > b)) {
                    return Err(format!("graph {i} source {s}: distances grew from β = {} to {beta}", beta / 2));
                }
                prev = Some(d);
                beta *= 2;
            }
        }
    }
    Ok(format!("20 graphs, {sources} sources: exact at β = n−1, monotone over powers of two"))
}

/// Induced subgraph on `vertices` built directly from the edge list.
fn frame_distances(g: &Graph, vertices: &[usize]) -> BTreeMap<(usize, usize), f64> {
    let index: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); vertices.len()];
    for e in g.edges() {
        if let (Some(&a), Some(&b)) = (index.get(&e.source), index.get(&e.target)) {
            adj[a].push((b, e.weight));
        }
    }
    let mut out = BTreeMap::new();
    for (i, &u) in vertices.iter().enumerate() {
        for (j, d) in dijkstra(&adj, i).into_iter().enumerate() {
            out.insert((u, vertices[j]), d);
        }
    }
    out
}

fn check_frame(g: &Graph, f: &FrameTrace) -> Result<usize, String> {
    let where_ = || format!("frame at level {} scale {} ({} vertices)", f.level, f.scale, f.vertices.len());
    let labels: BTreeMap<usize, _> = f.labels.iter().map(|l| (l.vertex, l)).collect();
    let pivots: BTreeSet<usize> = f.pivots.iter().map(|p| p.pivot).collect();
    let mut seen = BTreeSet::new();
    for grp in &f.core_groups {
        let first = &labels[&grp[0]].labels;
        for v in grp {
            if !seen.insert(*v) {
                return Err(format!("{}: vertex {v} in two core groups", where_()));
            }
            if labels[v].x {
                return Err(format!("{}: X-labelled vertex {v} in a core group", where_()));
            }
            if pivots.contains(v) {
                return Err(format!("{}: pivot {v} in a core group", where_()));
            }
            if &labels[v].labels != first {
                return Err(format!("{}: core group mixes label sets", where_()));
            }
        }
    }
    let d = frame_distances(g, &f.vertices);
    for p in &f.pivots {
        let lo = scaled_radius(p.choice.rho - 1, f.search_base);
        let hi = scaled_radius(p.choice.rho + 1, f.search_base);
        let expected: Vec<usize> = f
            .vertices
            .iter()
            .copied()
            .filter(|&v| {
                let near = d[&(p.pivot, v)].min(d[&(v, p.pivot)]);
                near > lo && near <= hi
            })
            .collect();
        if expected != p.fringe {
            return Err(format!("{}: pivot {} fringe {:?}, brute force {:?}", where_(), p.pivot, p.fringe, expected));
        }
    }
    Ok(f.pivots.iter().map(|p| p.fringe.len()).sum())
}

fn partition_semantics() -> Outcome {
    let (mut frames, mut pivots, mut fringe_vertices, mut groups) = (0usize, 0usize, 0usize, 0usize);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..24u64 {
        let family = Family::ALL[i as usize % Family::ALL.len()];
        let n = rng.random_range(20..=80);
        let weighted = i % 3 == 2;
        let g = generate(family, n, None, if weighted { 20 } else { 1 }, 40 + i).unwrap();
        let p = params(n);
        let mut instr = Instrumentation::with_trace();
        if weighted {
            hopset_weighted(&g, &p, i, &mut instr);
        } else {
            hopset_unweighted(&g, &p, i, &mut instr).unwrap();
        }
        for f in instr.frames.unwrap().iter().filter(|f| !f.vacuous) {
            frames += 1;
            pivots += f.pivots.len();
            groups += f.core_groups.len();
            fringe_vertices += check_frame(&g, f)?;
        }
    }
    if fringe_vertices == 0 || groups == 0 {
        return Err("traces never produced a fringe or core group".into());
    }
    Ok(format!(
        "{frames} frames, {pivots} pivots, {groups} core groups, {fringe_vertices} fringe vertices recomputed"
    ))
}

fn radius_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in 0..200u64 {
        let n = rng.random_range(10..=60);
        let width = rng.random_range(2..=8u64);
        let count = rng.random_range(1..=4u64);
        let rho_min = rng.random_range(2..=6u64);
        let c = PracticalConstants {
            rho_min,
            rho_max: rho_min + 1 + width * count,
            interval_width: width,
            interval_count: count,
            ..practical()
        };
        let p = derive_params(n, 0.0, 2, 2, &ModeConfig::Practical(c)).unwrap();
        let family = Family::ALL[t as usize % Family::ALL.len()];
        let g = generate(family, n, None, rng.random_range(1..=10), t).unwrap();
        let pivot = rng.random_range(0..n);
        let d_r = rng.random_range(0.1..3.0);
        let choice = select_radius(&g, pivot, d_r, &p, &mut ChaCha8Rng::seed_from_u64(t));
        let d = all_pairs(&g);
        let fringe = |rho: u64| {
            let within = |r: f64| (0..n).filter(|&v| d[pivot][v] <= r || d[v][pivot] <= r).count();
            within(scaled_radius(rho + 1, d_r)) - within(scaled_radius(rho - 1, d_r))
        };
        let lo = rho_min + 1 + width * (choice.sigma - 1);
        let best = (lo..lo + width).map(|r| (fringe(r), r)).min().unwrap();
        if (choice.fringe_size, choice.rho) != best {
            return Err(format!("triple {t}: chose {:?}, exhaustive minimum {:?}", choice, best));
        }
    }
    Ok("200 (graph, pivot, seed) triples match exhaustive minimization".into())
}

fn rounding_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut kept, mut dropped, mut zeros) = (0, 0, 0);
    for t in 0..1000 {
        let i = rng.random_range(-2..=20i64);
        let delta = rng.random_range(0.01..0.5);
        let beta = rng.random_range(1.0..64.0);
        let scheme = RoundingScheme::new(i, delta, beta);
        let threshold = 2f64.powi(i as i32 + 1);
        let w = match t % 5 {
            0 => 0.0,
            1 => threshold * rng.random_range(1.0..4.0),
            _ => rng.random_range(0.0..threshold),
        };
        let g = Graph::from_edges(2, [Edge::new(0, 1, w)]).unwrap();
        let q = quantize(&g, scheme);
        let unit = q.unit();
        let expected_unit = delta * 2f64.powi(i as i32 - 1) / beta;
        if (unit - expected_unit).abs() > 1e-15 * expected_unit {
            return Err(format!("pair {t}: unit {unit}, expected {expected_unit}"));
        }
        match q.graph().edge_weight(0, 1) {
            None if w >= threshold => dropped += 1,
            None => return Err(format!("pair {t}: weight {w} dropped below threshold {threshold}")),
            Some(_) if w >= threshold => return Err(format!("pair {t}: weight {w} kept at threshold {threshold}")),
            Some(r) if w == 0.0 => {
                if r != 1.0 {
                    return Err(format!("pair {t}: zero weight became {r} units"));
                }
                zeros += 1;
            }
            Some(r) => {
                if !(unit * r >= w && unit * r < w + unit) {
                    return Err(format!("pair {t}: {w} rounded to {r} units of {unit}"));
                }
                kept += 1;
            }
        }
    }
    for t in 0..100u64 {
        let i = rng.random_range(0..=16i64);
        let delta = rng.random_range(0.01..0.3);
        let beta = rng.random_range(2..=32usize);
        let hops = rng.random_range(1..=2 * beta);
        let total = rng.random_range(2f64.powi(i as i32)..2f64.powi(i as i32 + 1));
        // Split `total` over the hops; roughly a fifth of the hops weigh 0.
        let mut shares: Vec<f64> =
            (0..hops).map(|_| if rng.random_bool(0.2) { 0.0 } else { rng.random_range(0.1..1.0) }).collect();
        if shares.iter().all(|&s| s == 0.0) {
            shares[0] = 1.0;
        }
        let sum: f64 = shares.iter().sum();
        let weights: Vec<f64> = shares.iter().map(|s| s / sum * total).collect();
        let true_weight: f64 = weights.iter().sum();
        let g = Graph::from_edges(hops + 1, weights.iter().enumerate().map(|(v, &w)| Edge::new(v, v + 1, w))).unwrap();
        let scheme = RoundingScheme::new(i, delta, beta as f64);
        let q = quantize(&g, scheme);
        let units: f64 = (0..hops).map(|v| q.graph().edge_weight(v, v + 1).expect("light edges are kept")).sum();
        let zero_hops = weights.iter().filter(|&&w| w == 0.0).count() as f64;
        let quantized = units * q.unit();
        let bound = (1.0 + delta) * true_weight + zero_hops * q.unit();
        if quantized > bound * (1.0 + 1e-12) || quantized < true_weight * (1.0 - 1e-12) {
            return Err(format!("path {t}: quantized {quantized}, true {true_weight}, bound {bound}"));
        }
    }
    Ok(format!("1000 pairs ({kept} kept, {dropped} dropped, {zeros} zero) and 100 paths within bounds"))
}

fn parallel_approximation() -> Outcome {
    let n = 512;
    let pp = ParallelParams::practical(n, 16.0, 0.05, practical().shortcut_depth);
    let bound = pp.compounded_bound(pp.sweeps);
    let mut lines = Vec::new();
    let mut ok = true;
    for family in [Family::Path, Family::LayeredDag] {
        let mut met = 0;
        let mut worst: f64 = 1.0;
        for seed in 0..20u64 {
            let g = generate(family, n, None, 64, seed).unwrap().normalized();
            let h = phopset(&g, &params(n), &pp, seed, &mut Instrumentation::new()).unwrap();
            let aug = adjacency(&augment(&g, &h));
            let adj = adjacency(&g);
            let mut good = true;
            for s in 0..n {
                let exact = dijkstra(&adj, s);
                let limited = bellman_ford_adj(&aug, s, pp.beta as usize);
                for v in 0..n {
                    if exact[v].is_infinite() {
                        good &= limited[v].is_infinite();
                        continue;
                    }
                    let r = if exact[v] == 0.0 { 1.0 } else { limited[v] / exact[v] };
                    worst = worst.max(r);
                    good &= limited[v] >= exact[v] && limited[v] <= bound * exact[v];
                }
            }
            met += good as usize;
        }
        ok &= met * 100 >= 95 * 20;
        lines.push(format!("{family}: {met}/20 seeds, worst ratio {worst:.4}"));
    }
    let msg = format!("{} sweeps, bound {bound:.4}; {}", pp.sweeps, lines.join("; "));
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn hopbound_trend() -> Outcome {
    let mut fractions = Vec::new();
    let mut medians = Vec::new();
    for exp in [8u32, 10, 12] {
        let n = 1usize << exp;
        let g = generate(Family::Path, n, None, 1, 0).unwrap();
        let p = params(n);
        let mut sources: Vec<usize> = PairSampling::Sampled { sources: 16 }.sources(n, exp as u64);
        sources.push(0);
        let pairs: Vec<(usize, usize)> = sources.iter().flat_map(|&s| (s..n).map(move |t| (s, t))).collect();
        let mut betas: Vec<usize> = (0..10u64)
            .map(|seed| {
                let h = hopset_unweighted(&g, &p, seed, &mut Instrumentation::new()).unwrap();
                measure_hopbound(&g, &h, 0.0, &pairs).unwrap()
            })
            .collect();
        betas.sort_unstable();
        let median = (betas[4] + betas[5]) as f64 / 2.0;
        medians.push(format!("n={n}: median β {median}"));
        fractions.push(median / n as f64);
    }
    let decreasing = fractions.windows(2).all(|w| w[1] < w[0]);
    let msg = format!("{}; β/n = {fractions:.5?}", medians.join(", "));
    if decreasing {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn size_accounting(corpus: &[CorpusGraph], built: &[Built]) -> Outcome {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let mut record = String::from("graph,family,weights,n,m,construction,hopset_edges\n");
    for b in built {
        let c = &corpus[b.graph];
        record.push_str(&format!(
            "{},{},{:?},{},{},{},{}\n",
            b.graph,
            c.family,
            c.weights,
            c.graph.vertex_count(),
            c.graph.edge_count(),
            b.name,
            b.hopset.len()
        ));
    }
    let record_path = dir.join("acceptance_corpus_sizes.csv");
    fs::write(&record_path, record).map_err(|e| e.to_string())?;

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut rows = Vec::new();
    for exp in 7..=11u32 {
        let n = 1usize << exp;
        let p = params(n);
        let mut total = 0usize;
        for (f, family) in Family::ALL.into_iter().enumerate() {
            for rep in 0..3u64 {
                let seed = 100 * f as u64 + rep;
                let g = generate(family, n, None, 1, seed).unwrap();
                total += hopset_unweighted(&g, &p, seed, &mut Instrumentation::new()).unwrap().len();
            }
        }
        xs.push((n as f64).ln());
        ys.push((total as f64).ln());
        rows.push(format!("n={n}: {total}"));
    }
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    let msg = format!(
        "corpus sizes in {}; fitted slope {slope:.3} over {}",
        record_path.display(),
        rows.join(", ")
    );
    if slope <= 1.3 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let configs = [
        (Family::RandomGnm, 150, 1, Algorithm::Unweighted),
        (Family::Grid, 144, 30, Algorithm::Weighted),
        (Family::LayeredDag, 128, 16, Algorithm::Parallel),
    ];
    let mut compared = 0;
    for (ci, &(family, n, w, algorithm)) in configs.iter().enumerate() {
        let mut runs = Vec::new();
        for (ri, threads) in [1usize, 4, 4].into_iter().enumerate() {
            let base = dir.path().join(format!("c{ci}r{ri}"));
            let mut c = ExperimentConfig::new(GraphInput::Generate(GeneratorSpec::new(family, n).max_weight(w).seed(9)));
            c.algorithm = algorithm;
            c.seed = 9;
            c.outputs.hopset = Some(base.with_extension("txt"));
            c.outputs.report = Some(base.with_extension("report.json"));
            c.outputs.stats = Some(base.with_extension("stats.csv"));
            c.outputs.pairs = Some(base.with_extension("pairs.csv"));
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
            pool.install(|| run_experiment(&c)).map_err(|e| format!("{e:#}"))?;
            let files: Vec<Vec<u8>> = ["txt", "txt.json", "report.json", "stats.csv", "pairs.csv"]
                .iter()
                .map(|ext| fs::read(base.with_extension(ext)).unwrap())
                .collect();
            runs.push(files);
        }
        if runs.iter().any(|r| r != &runs[0]) {
            return Err(format!("{algorithm:?} on {family}: artifacts differ between runs"));
        }
        compared += runs.len();
    }
    Ok(format!("{compared} runs over 3 configurations (1 and 4 threads) produce identical files"))
}

// ---------------------------------------------------------------------------

struct Runner {
    failures: usize,
    only: Vec<u32>,
}

impl Runner {
    fn run(&mut self, id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) {
        if !self.only.is_empty() && !self.only.contains(&id) {
            return;
        }
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let timing = format!("{:.1}s of {}s", elapsed.as_secs_f64(), budget.as_secs());
        let line = match result {
            Ok(detail) if elapsed <= budget => format!("PASS [{id}] {name}: {detail} ({timing})"),
            Ok(detail) => format!("FAIL [{id}] {name}: over time budget; {detail} ({timing})"),
            Err(detail) => format!("FAIL [{id}] {name}: {detail} ({timing})"),
        };
        if line.starts_with("FAIL") {
            self.failures += 1;
        }
        println!("{line}");
    }
}

fn main() {
    // Optional criterion ids on the command line restrict the run.
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut r = Runner { failures: 0, only };
    let corpus = corpus();
    let mut built = Vec::new();
    r.run(1, "validity", Duration::from_secs(120), || {
        built = build_corpus(&corpus);
        validity(&corpus, &built)
    });
    r.run(2, "distance preservation", Duration::from_secs(120), || preservation(&corpus, &built));
    r.run(3, "hop-limited oracle equivalence", Duration::from_secs(60), hop_limited);
    r.run(4, "partition semantics", Duration::from_secs(60), partition_semantics);
    r.run(5, "radius selection optimality", Duration::from_secs(60), radius_optimality);
    r.run(6, "rounding bounds", Duration::from_secs(30), rounding_bounds);
    r.run(7, "parallel approximation", Duration::from_secs(180), parallel_approximation);
    r.run(8, "hopbound trend", Duration::from_secs(300), hopbound_trend);
    r.run(9, "size accounting", Duration::from_secs(180), || size_accounting(&corpus, &built));
    r.run(10, "determinism", Duration::from_secs(60), determinism);
    if r.only.is_empty() {
        println!("acceptance: {} of 10 criteria passed", 10 - r.failures);
    }
    if r.failures > 0 {
        std::process::exit(1);
    }
}
