//! Seeded random graph generators. All randomness flows through an explicit
//! seed, so identical parameters give identical graphs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};

/// Erdős–Rényi graph: every pair (ordered pair for digraphs) becomes an
/// edge independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, directed: bool, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && u > v) {
                continue;
            }
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    if directed {
        Graph::directed(n, &edges).expect("generated arcs are valid")
    } else {
        Graph::undirected(n, &edges).expect("generated edges are valid")
    }
}

/// Undirected graph that is a disjoint union of cliques plus `extra`
/// vertices with random attachments plus a designated vertex `z` (always
/// the last index). Deleting the extra vertices and `z` always leaves a
/// cluster graph, so the deletion distance is at most `extra`.
///
/// Layout: clique vertices first (consecutively per clique), then the
/// `extra` vertices, then `z`. Each extra vertex attaches to every earlier
/// non-`z` vertex with probability `attach_p`; `z` attaches to every other
/// vertex with probability `z_attach_p`.
pub fn planted_cluster(
    clique_sizes: &[usize],
    extra: usize,
    attach_p: f64,
    z_attach_p: f64,
    seed: u64,
) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clique_total: usize = clique_sizes.iter().sum();
    let n = clique_total + extra + 1;
    let z = n - 1;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();

    let mut offset = 0;
    for &size in clique_sizes {
        for a in 0..size {
            for b in a + 1..size {
                edges.push((offset + a, offset + b));
            }
        }
        offset += size;
    }
    for e in 0..extra {
        let v = clique_total + e;
        for u in 0..v {
            if rng.gen_bool(attach_p) {
                edges.push((u, v));
            }
        }
    }
    for u in 0..z {
        if rng.gen_bool(z_attach_p) {
            edges.push((u, z));
        }
    }
    Graph::undirected(n, &edges).expect("generated edges are valid")
}
