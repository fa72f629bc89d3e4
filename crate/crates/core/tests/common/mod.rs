//! Independent oracles shared by the integration tests. Nothing here calls
//! the BFS or power code under test.

#![allow(dead_code)]

use powergraph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: usize = usize::MAX / 4;

/// Floyd–Warshall on unit weights.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if u != v && g.has_edge(u, v) {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

type BoolMatrix = Vec<Vec<bool>>;

fn bool_mul(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
    let n = a.len();
    let mut c = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    c[i][j] |= b[k][j];
                }
            }
        }
    }
    c
}

/// `(A + I)^r` by repeated cubic boolean multiplication. Entry `(i, j)` is
/// true iff `d(i, j) ≤ r`.
pub fn boolean_power(g: &Graph, r: usize) -> BoolMatrix {
    let n = g.order();
    let base: BoolMatrix = (0..n)
        .map(|i| (0..n).map(|j| i == j || g.has_edge(i, j)).collect())
        .collect();
    let mut acc = base.clone();
    for _ in 1..r {
        acc = bool_mul(&acc, &base);
    }
    acc
}

/// Edge set `{(u, v) : u <= v}` of the r-th power per the oracle.
pub fn oracle_power_edges(g: &Graph, r: usize) -> Vec<(usize, usize)> {
    let reach = boolean_power(g, r);
    let mut out = Vec::new();
    for u in 0..g.order() {
        for v in u..g.order() {
            let keep = if u == v { g.loops_allowed() } else { reach[u][v] };
            if keep {
                out.push((u, v));
            }
        }
    }
    out
}

/// Erdős–Rényi style graph with a seeded edge probability.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, loops: bool) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u..n {
            if (u != v || loops) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges, loops).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges, false).unwrap()
}

/// Random connected "thick path": `layers` nonempty layers of size 1..=width,
/// every vertex joined to at least one vertex of each adjacent layer, plus
/// random extra edges inside and between consecutive layers. The distance
/// between the end layers is `layers - 1`.
pub fn thick_path(rng: &mut ChaCha8Rng, layers: usize, width: usize, p: f64) -> Graph {
    let sizes: Vec<usize> = (0..layers).map(|_| rng.gen_range(1..=width)).collect();
    let mut starts = vec![0];
    for s in &sizes {
        starts.push(starts.last().unwrap() + s);
    }
    let n = *starts.last().unwrap();
    let mut edges = Vec::new();
    for i in 0..layers {
        let layer = starts[i]..starts[i + 1];
        for u in layer.clone() {
            for v in u + 1..layer.end {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
            if i + 1 < layers {
                // a shared anchor in the next layer keeps each layer joined
                edges.push((u, starts[i + 1]));
            }
            if i > 0 {
                let prev = starts[i - 1]..starts[i];
                edges.push((u, rng.gen_range(prev.clone())));
                for w in prev {
                    if rng.gen_bool(p) {
                        edges.push((u, w));
                    }
                }
            }
        }
    }
    Graph::new(n, &edges, false).unwrap()
}
