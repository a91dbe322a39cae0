#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treemod_core::MultiGraph;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    MultiGraph::new(n, edges).unwrap()
}

pub fn cycle(n: usize) -> MultiGraph {
    MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Parts of sizes 1..=k, consecutive parts completely joined.
pub fn multipartite(k: usize) -> MultiGraph {
    let mut start = Vec::new();
    let mut n = 0;
    for size in 1..=k {
        start.push(n);
        n += size;
    }
    let mut edges = Vec::new();
    for i in 0..k.saturating_sub(1) {
        for a in start[i]..start[i] + i + 1 {
            for b in start[i + 1]..start[i + 1] + i + 2 {
                edges.push((a, b));
            }
        }
    }
    MultiGraph::new(n, edges).unwrap()
}

/// Random connected multigraph: a random tree plus extra random edges
/// (occasionally parallel), with shuffled vertex labels and edge order.
pub fn random_connected(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize) -> MultiGraph {
    let n = rng.gen_range(2..=max_vertices);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let extra = rng.gen_range(0..=max_edges - (n - 1));
    for _ in 0..extra {
        if rng.gen_bool(0.1) {
            let &e = edges.choose(rng).unwrap();
            edges.push(e);
        } else {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                edges.push((a, b));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    edges.shuffle(rng);
    MultiGraph::new(n, edges.into_iter().map(|(a, b)| (perm[a], perm[b]))).unwrap()
}

/// The same graph with vertex labels permuted and edges reordered.
pub fn shuffled(rng: &mut ChaCha8Rng, g: &MultiGraph) -> MultiGraph {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(rng);
    let mut edges = g.edges().to_vec();
    edges.shuffle(rng);
    MultiGraph::new(
        g.vertex_count(),
        edges.into_iter().map(|(a, b)| (perm[a], perm[b])),
    )
    .unwrap()
}

pub fn random_corpus(
    seed: u64,
    count: usize,
    max_vertices: usize,
    max_edges: usize,
) -> Vec<MultiGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_connected(&mut rng, max_vertices, max_edges))
        .collect()
}

/// The committed small-graph corpus (|V| ≤ 8, |E| ≤ 14).
pub fn committed_corpus() -> Vec<MultiGraph> {
    let text = std::fs::read_to_string(fixture("corpus_small.json")).expect("corpus fixture");
    serde_json::from_str(&text).expect("corpus json")
}
