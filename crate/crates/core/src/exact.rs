//! Exact solvers: subset enumeration over additions incident to the target
//! vertex, a fully unrestricted brute-force oracle for small instances, and
//! a greedy marginal-gain baseline.
//!
//! All three are deterministic. Enumeration goes by increasing subset size,
//! then lexicographically over the sorted candidate list, so the reported
//! best solution is the first maximum in that order: fewest additions, then
//! lexicographically smallest.

use std::time::{Duration, Instant};

use crate::centrality::{CentralityKind, Rational};
use crate::error::{Error, Result};
use crate::instance::{ImprovementInstance, Solution};
use crate::graph::VertexId;

/// Hard ceiling for [`solve_unrestricted`]: candidate pairs and budget.
pub const EXHAUSTIVE_CANDIDATE_LIMIT: usize = 60;
pub const EXHAUSTIVE_K_LIMIT: usize = 3;

/// Outcome of a solver run. `best` always passes [`crate::instance::verify`]
/// with exactly the reported achieved value.
#[derive(Debug, Clone)]
pub struct SolverReport {
    pub best: Solution,
    pub candidates_evaluated: u64,
    pub elapsed: Duration,
}

/// The candidate additions a solution restricted to the target vertex may
/// use, in canonical sorted order:
///
/// - undirected: absent edges `{z, v}`,
/// - directed closeness: absent arcs `(z, v)` only (arcs into `z` cannot
///   shorten any distance from `z`),
/// - directed betweenness: absent arcs `(z, v)` and `(v, z)`, both
///   orientations.
pub fn incident_candidates(inst: &ImprovementInstance) -> Vec<(VertexId, VertexId)> {
    let g = &inst.graph;
    let z = inst.z;
    let mut cands = Vec::new();
    for v in 0..g.n() {
        if v == z {
            continue;
        }
        if g.is_directed() {
            if !g.has_edge(z, v) {
                cands.push((z, v));
            }
            if inst.kind.centrality == CentralityKind::Betweenness && !g.has_edge(v, z) {
                cands.push((v, z));
            }
        } else if !g.has_edge(z, v) {
            cands.push(g.normalize_pair(z, v));
        }
    }
    cands.sort_unstable();
    cands
}

/// Every absent pair (undirected) or absent arc (directed) of the graph, in
/// canonical sorted order. Used by the unrestricted oracle.
pub fn all_absent_pairs(inst: &ImprovementInstance) -> Vec<(VertexId, VertexId)> {
    let g = &inst.graph;
    let n = g.n();
    let mut cands = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || g.has_edge(u, v) {
                continue;
            }
            if !g.is_directed() && u > v {
                continue;
            }
            cands.push((u, v));
        }
    }
    cands
}

/// Exhaustively evaluates every subset of `candidates` of size at most `k`
/// and returns the best solution plus the number of subsets evaluated.
fn enumerate_best(
    inst: &ImprovementInstance,
    candidates: &[(VertexId, VertexId)],
) -> (Solution, u64) {
    let base = inst
        .evaluate(&[])
        .expect("empty addition set always evaluates");
    let mut best = Solution {
        additions: Vec::new(),
        achieved: base,
    };
    let mut evaluated = 1u64;
    let max_size = inst.k.min(candidates.len());
    let mut subset: Vec<(VertexId, VertexId)> = Vec::with_capacity(max_size);
    for size in 1..=max_size {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            subset.clear();
            subset.extend(idx.iter().map(|&i| candidates[i]));
            let achieved = inst
                .evaluate(&subset)
                .expect("candidate subsets are valid additions");
            evaluated += 1;
            if achieved > best.achieved {
                best = Solution {
                    additions: subset.clone(),
                    achieved,
                };
            }
            // Next combination in lexicographic order.
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] != i + candidates.len() - size {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    idx.clear();
                    break;
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    (best, evaluated)
}

/// Exact solver over additions incident to the target vertex. Enumerates all
/// subsets of size at most `k` of [`incident_candidates`], evaluates each
/// exactly, and returns a maximum-value solution.
pub fn solve_incident(inst: &ImprovementInstance) -> SolverReport {
    let start = Instant::now();
    let candidates = incident_candidates(inst);
    let (best, candidates_evaluated) = enumerate_best(inst, &candidates);
    SolverReport {
        best,
        candidates_evaluated,
        elapsed: start.elapsed(),
    }
}

/// Brute-force oracle over *all* absent pairs, not just incident ones.
/// Exists to validate that incident additions suffice. Guarded: at most
/// [`EXHAUSTIVE_CANDIDATE_LIMIT`] candidate pairs and k at most
/// [`EXHAUSTIVE_K_LIMIT`].
pub fn solve_unrestricted(inst: &ImprovementInstance) -> Result<SolverReport> {
    let start = Instant::now();
    let candidates = all_absent_pairs(inst);
    if candidates.len() > EXHAUSTIVE_CANDIDATE_LIMIT || inst.k > EXHAUSTIVE_K_LIMIT {
        return Err(Error::ExhaustiveGuard {
            candidates: candidates.len(),
            candidate_limit: EXHAUSTIVE_CANDIDATE_LIMIT,
            k: inst.k,
            k_limit: EXHAUSTIVE_K_LIMIT,
        });
    }
    let (best, candidates_evaluated) = enumerate_best(inst, &candidates);
    Ok(SolverReport {
        best,
        candidates_evaluated,
        elapsed: start.elapsed(),
    })
}

/// Greedy baseline: up to `k` rounds, each adding the single incident
/// candidate with the largest marginal gain (ties: first candidate in
/// canonical order, i.e. smallest vertex id). Stops early once no candidate
/// has strictly positive gain.
pub fn greedy(inst: &ImprovementInstance) -> SolverReport {
    let start = Instant::now();
    let mut chosen: Vec<(VertexId, VertexId)> = Vec::new();
    let mut current: Rational = inst
        .evaluate(&[])
        .expect("empty addition set always evaluates");
    let mut evaluated = 1u64;
    let candidates = incident_candidates(inst);
    for _ in 0..inst.k {
        let mut round_best: Option<((VertexId, VertexId), Rational)> = None;
        for &cand in &candidates {
            if chosen.contains(&cand) {
                continue;
            }
            let mut trial = chosen.clone();
            trial.push(cand);
            let value = inst
                .evaluate(&trial)
                .expect("candidate subsets are valid additions");
            evaluated += 1;
            let better = match &round_best {
                None => true,
                Some((_, best_value)) => value > *best_value,
            };
            if better {
                round_best = Some((cand, value));
            }
        }
        match round_best {
            Some((cand, value)) if value > current => {
                chosen.push(cand);
                current = value;
            }
            _ => break,
        }
    }
    chosen.sort_unstable();
    SolverReport {
        best: Solution {
            additions: chosen,
            achieved: current,
        },
        candidates_evaluated: evaluated,
        elapsed: start.elapsed(),
    }
}
