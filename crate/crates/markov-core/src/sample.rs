//! Seeded chain constructors shared by the test and benchmark suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{Distribution, TransitionMatrix};

/// Deterministic stream for sampled fixtures.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in [-1, 1].
pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Two-state chain `[[1-a, a], [b, 1-b]]`; stationary law proportional to (b, a).
pub fn two_state(a: f64, b: f64) -> TransitionMatrix {
    TransitionMatrix::from_rows(vec![
        vec![(0, 1.0 - a), (1, a)],
        vec![(0, b), (1, 1.0 - b)],
    ])
    .expect("two-state rows are stochastic")
}

/// Random irreducible, aperiodic chain: a directed cycle backbone plus a
/// self-loop and `extras` random out-edges per row, with random weights.
pub fn random_irreducible_chain(n: usize, extras: usize, seed: u64) -> TransitionMatrix {
    let mut rng = rng(seed);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut weights = vec![0.0; n];
        weights[(i + 1) % n] += 0.3 + 0.4 * rng.random::<f64>();
        weights[i] += 0.05 + 0.15 * rng.random::<f64>();
        for _ in 0..extras {
            let j = rng.random_range(0..n);
            weights[j] += rng.random::<f64>() * 0.5;
        }
        let sum: f64 = weights.iter().sum();
        let row: Vec<(usize, f64)> = weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(j, &w)| (j, w / sum))
            .collect();
        rows.push(row);
    }
    TransitionMatrix::from_rows(rows).expect("rows normalized to unit sum")
}

/// Simple random walk from an undirected edge set; no self-loops.
///
/// Returns the chain together with its degree-proportional stationary law.
pub fn random_walk_chain_from_edges(
    n: usize,
    edges: &[(usize, usize)],
) -> (TransitionMatrix, Distribution) {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        assert!(a != b, "walk chains here are self-loop-free");
        if !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let degrees: Vec<usize> = adj.iter().map(|nb| nb.len()).collect();
    assert!(degrees.iter().all(|&d| d > 0), "isolated node in walk graph");
    let rows = adj
        .iter()
        .map(|nb| nb.iter().map(|&j| (j, 1.0 / nb.len() as f64)).collect())
        .collect();
    let p = TransitionMatrix::from_rows(rows).expect("walk rows are stochastic");
    let pi = Distribution::new(degrees.iter().map(|&d| d as f64).collect())
        .expect("positive degrees");
    (p, pi)
}

/// Random walk on the path graph 0 - 1 - ... - n-1.
pub fn random_walk_on_path(n: usize) -> (TransitionMatrix, Distribution) {
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    random_walk_chain_from_edges(n, &edges)
}

/// Random walk on a connected undirected graph: a path backbone plus
/// `extra_edges` random chords. Reversible and self-loop-free.
pub fn random_reversible_walk(
    n: usize,
    extra_edges: usize,
    seed: u64,
) -> (TransitionMatrix, Distribution) {
    let mut rng = rng(seed);
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let mut attempts = 0;
    let mut added = 0;
    while added < extra_edges && attempts < 20 * extra_edges + 100 {
        attempts += 1;
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        let e = (a.min(b), a.max(b));
        if !edges.contains(&e) {
            edges.push(e);
            added += 1;
        }
    }
    random_walk_chain_from_edges(n, &edges)
}
