//! Property tests pitting the library against independent oracles:
//! Floyd-Warshall distances, exhaustive path enumeration, and structural
//! invariants of the graph operations.

use proptest::prelude::*;

use centrality_improve::graph::{Distance, Graph, VertexId};
use centrality_improve::instance::{verify, ImprovementInstance, ProblemKind};
use centrality_improve::{betweenness, betweenness_naive, closeness, ratio};
use num::BigUint;

/// Random graph as (n, directed, edge list); the strategy keeps graphs
/// small enough for the exhaustive oracles.
fn arb_graph(max_n: usize, directed: bool) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        let pair_count = if directed { n * (n - 1) } else { n * (n - 1) / 2 };
        proptest::collection::vec(proptest::bool::weighted(0.35), pair_count).prop_map(
            move |mask| {
                let mut edges = Vec::new();
                let mut idx = 0;
                for u in 0..n {
                    for v in 0..n {
                        if u == v || (!directed && u > v) {
                            continue;
                        }
                        if mask[idx] {
                            edges.push((u, v));
                        }
                        idx += 1;
                    }
                }
                if directed {
                    Graph::directed(n, &edges).unwrap()
                } else {
                    Graph::undirected(n, &edges).unwrap()
                }
            },
        )
    })
}

/// All-pairs distances by Floyd-Warshall; independent of the BFS code.
fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for u in 0..n {
        d[u][u] = Some(0);
        for &v in g.out_neighbors(u) {
            d[u][v] = Some(1);
        }
    }
    for mid in 0..n {
        for a in 0..n {
            for b in 0..n {
                if let (Some(x), Some(y)) = (d[a][mid], d[mid][b]) {
                    if d[a][b].map_or(true, |cur| x + y < cur) {
                        d[a][b] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Counts shortest s-t paths by enumerating all simple paths of the
/// minimum length; independent of the BFS layer accumulation.
fn count_paths_exhaustive(g: &Graph, s: VertexId, t: VertexId) -> u64 {
    if s == t {
        return 1;
    }
    fn dfs(g: &Graph, at: usize, t: usize, left: usize, on: &mut Vec<bool>, hits: &mut u64) {
        if left == 0 {
            if at == t {
                *hits += 1;
            }
            return;
        }
        for &v in g.out_neighbors(at) {
            if !on[v] {
                on[v] = true;
                dfs(g, v, t, left - 1, on, hits);
                on[v] = false;
            }
        }
    }
    for len in 1..g.n() {
        let mut hits = 0;
        let mut on = vec![false; g.n()];
        on[s] = true;
        dfs(g, s, t, len, &mut on, &mut hits);
        if hits > 0 {
            return hits;
        }
    }
    0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bfs_matches_floyd_warshall(g in arb_graph(10, false), seed in 0usize..10) {
        let src = seed % g.n();
        let dist = g.bfs_distances(src).unwrap();
        let fw = floyd_warshall(&g);
        for v in 0..g.n() {
            prop_assert_eq!(dist[v].finite(), fw[src][v]);
        }
    }

    #[test]
    fn directed_bfs_matches_floyd_warshall(g in arb_graph(8, true), seed in 0usize..10) {
        let src = seed % g.n();
        let dist = g.bfs_distances(src).unwrap();
        let fw = floyd_warshall(&g);
        for v in 0..g.n() {
            prop_assert_eq!(dist[v].finite(), fw[src][v]);
        }
    }

    #[test]
    fn path_counts_match_exhaustive_enumeration(g in arb_graph(8, false), seed in 0usize..10) {
        let src = seed % g.n();
        let (_, counts) = g.shortest_path_counts(src).unwrap();
        for t in 0..g.n() {
            if t == src { continue; }
            prop_assert_eq!(&counts[t], &BigUint::from(count_paths_exhaustive(&g, src, t)));
        }
    }

    #[test]
    fn add_then_remove_round_trips(g in arb_graph(9, false)) {
        // Collect up to two absent pairs, add them, rebuild without them.
        let mut absent = Vec::new();
        'outer: for u in 0..g.n() {
            for v in u + 1..g.n() {
                if !g.has_edge(u, v) {
                    absent.push((u, v));
                    if absent.len() == 2 { break 'outer; }
                }
            }
        }
        let bigger = g.add_edges(&absent).unwrap();
        prop_assert_eq!(bigger.m(), g.m() + absent.len());
        let back: Vec<_> = bigger
            .edges()
            .into_iter()
            .filter(|e| !absent.contains(e))
            .collect();
        prop_assert_eq!(Graph::undirected(g.n(), &back).unwrap(), g);
    }

    #[test]
    fn cluster_witness_is_sound_and_complete(g in arb_graph(9, false)) {
        match g.induced_p3().unwrap() {
            Some([a, b, c]) => {
                prop_assert!(g.has_edge(a, b));
                prop_assert!(g.has_edge(b, c));
                prop_assert!(!g.has_edge(a, c));
            }
            None => {
                // No witness: every two-hop pair must be adjacent.
                for b in 0..g.n() {
                    let nb = g.neighbors(b);
                    for (i, &a) in nb.iter().enumerate() {
                        for &c in &nb[i + 1..] {
                            prop_assert!(g.has_edge(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closeness_monotone_under_incident_addition(g in arb_graph(9, false), seed in 0usize..20) {
        let z = seed % g.n();
        let before = closeness(&g, z).unwrap();
        prop_assert!(before >= ratio(0, 1));
        prop_assert!(before <= ratio(g.n() as i64 - 1, 1));
        for v in 0..g.n() {
            if v == z || g.has_edge(z, v) { continue; }
            let after = closeness(&g.add_edges(&[g.normalize_pair(z, v)]).unwrap(), z).unwrap();
            prop_assert!(after >= before);
        }
    }

    #[test]
    fn betweenness_matches_naive(g in arb_graph(7, false), seed in 0usize..10) {
        let z = seed % g.n();
        prop_assert_eq!(betweenness(&g, z).unwrap(), betweenness_naive(&g, z).unwrap());
    }

    #[test]
    fn directed_betweenness_matches_naive(g in arb_graph(6, true), seed in 0usize..10) {
        let z = seed % g.n();
        let b = betweenness(&g, z).unwrap();
        prop_assert_eq!(b.clone(), betweenness_naive(&g, z).unwrap());
        prop_assert!(b >= ratio(0, 1));
        let n = g.n() as i64;
        prop_assert!(b <= ratio((n - 1) * (n - 2), 1));
    }

    #[test]
    fn verify_is_order_independent(g in arb_graph(8, false), seed in 0usize..20) {
        let z = seed % g.n();
        let mut absent: Vec<_> = (0..g.n())
            .filter(|&v| v != z && !g.has_edge(z, v))
            .map(|v| g.normalize_pair(z, v))
            .collect();
        absent.truncate(3);
        if absent.is_empty() {
            return Ok(());
        }
        let inst = ImprovementInstance::new(
            g.clone(), z, absent.len(), ratio(1, 2), ProblemKind::CLOSENESS,
        ).unwrap();
        let forward = verify(&inst, &absent).unwrap();
        absent.reverse();
        let backward = verify(&inst, &absent).unwrap();
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn diameter_is_max_pairwise_distance(g in arb_graph(8, false)) {
        let fw = floyd_warshall(&g);
        let mut max: Option<usize> = Some(0);
        'outer: for u in 0..g.n() {
            for v in 0..g.n() {
                if u == v { continue; }
                match fw[u][v] {
                    None => { max = None; break 'outer; }
                    Some(d) => max = max.map(|m| m.max(d)),
                }
            }
        }
        let want = match max {
            Some(d) => Distance::Finite(d),
            None => Distance::Unreachable,
        };
        prop_assert_eq!(g.diameter(), want);
    }
}
