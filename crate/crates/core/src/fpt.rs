//! Solvers parameterized by the vertex-deletion distance to a cluster graph:
//! minimum cluster-vertex-deletion via depth-bounded branching on induced
//! P3s, and signature-based enumeration solvers for undirected closeness and
//! betweenness improvement.
//!
//! The decomposition always keeps the target vertex `z` outside both the
//! deletion set and the clusters; signatures are neighborhoods restricted to
//! the deletion set plus `z`, encoded as bitmasks. The solvers enumerate
//! candidate solutions up to signature equivalence and evaluate every
//! candidate with the exact centrality module, returning the maximum, so
//! optimality never rests on the enumeration structure alone.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use crate::centrality::CentralityKind;
use crate::error::{Error, Result};
use crate::exact::SolverReport;
use crate::graph::{induced_p3_masked, Graph, VertexId};
use crate::instance::{ImprovementInstance, Solution};

/// Neighborhood of a vertex or cluster restricted to the deletion set plus
/// the target vertex, as a bitmask: bit `i` is the `i`-th deletion-set
/// vertex (in ascending order), the highest bit is `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(pub u64);

impl Signature {
    pub const EMPTY: Signature = Signature(0);

    pub fn union(self, other: Signature) -> Signature {
        Signature(self.0 | other.0)
    }
}

/// A cluster-vertex-deletion decomposition for a graph with a designated
/// vertex `z`: removing `vds` and `z` leaves a disjoint union of cliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterDecomposition {
    pub z: VertexId,
    /// Deletion set, ascending. Its size is the parameter.
    pub vds: Vec<VertexId>,
    /// Cliques partitioning the remaining vertices, each sorted, ordered by
    /// smallest member.
    pub clusters: Vec<Vec<VertexId>>,
    /// Per-cluster signature: the union of the members' signatures.
    pub cluster_sig: Vec<Signature>,
    /// Per-vertex signature for cluster vertices (`None` for `z` and
    /// deletion-set members).
    pub vertex_sig: Vec<Option<Signature>>,
}

impl ClusterDecomposition {
    /// Size of the deletion set (the parameter usually called ell).
    pub fn ell(&self) -> usize {
        self.vds.len()
    }

    fn z_bit(&self) -> u64 {
        1 << self.vds.len()
    }

    /// True if the signature contains `z`, i.e. the vertex or cluster is
    /// adjacent to the target.
    pub fn sig_has_z(&self, sig: Signature) -> bool {
        sig.0 & self.z_bit() != 0
    }

    /// Index of the cluster containing `v`, if any.
    pub fn cluster_of(&self, v: VertexId) -> Option<usize> {
        self.clusters.iter().position(|c| c.binary_search(&v).is_ok())
    }
}

/// Computes a minimum-size deletion set over `V - {z}` whose removal
/// (together with `z`) leaves a cluster graph, by iterative deepening over
/// three-way branching on the canonical induced P3. Deterministic.
pub fn cluster_vertex_deletion(g: &Graph, z: VertexId) -> Result<ClusterDecomposition> {
    if z >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: z, n: g.n() });
    }
    let vds = minimum_cluster_deletion_set(g, Some(z))?;
    build_decomposition(g, z, vds)
}

/// Minimum-size vertex set whose removal (plus the excluded vertex, if any)
/// leaves a cluster graph. The target-aware entry point is
/// [`cluster_vertex_deletion`]; passing `exclude: None` solves plain
/// cluster vertex deletion.
pub fn minimum_cluster_deletion_set(
    g: &Graph,
    exclude: Option<VertexId>,
) -> Result<Vec<VertexId>> {
    if g.is_directed() {
        return Err(Error::RequiresUndirected);
    }
    let mut alive = vec![true; g.n()];
    if let Some(z) = exclude {
        if z >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: z, n: g.n() });
        }
        alive[z] = false;
    }
    for limit in 0..=g.n() {
        let mut deleted = Vec::new();
        if branch_cvd(g, &mut alive, limit, &mut deleted) {
            deleted.sort_unstable();
            return Ok(deleted);
        }
    }
    unreachable!("deleting every vertex always leaves a cluster graph")
}

fn branch_cvd(
    g: &Graph,
    alive: &mut [bool],
    limit: usize,
    deleted: &mut Vec<VertexId>,
) -> bool {
    match induced_p3_masked(g, alive) {
        None => true,
        Some(witness) => {
            if limit == 0 {
                return false;
            }
            for &v in &witness {
                alive[v] = false;
                deleted.push(v);
                if branch_cvd(g, alive, limit - 1, deleted) {
                    return true;
                }
                deleted.pop();
                alive[v] = true;
            }
            false
        }
    }
}

/// Builds the decomposition for an externally supplied deletion set
/// (matching the CLI's `--vds` escape hatch). Fails if removing
/// `vds + {z}` does not leave a cluster graph.
pub fn decomposition_from_vds(
    g: &Graph,
    z: VertexId,
    vds: &[VertexId],
) -> Result<ClusterDecomposition> {
    if g.is_directed() {
        return Err(Error::RequiresUndirected);
    }
    if z >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: z, n: g.n() });
    }
    let mut vds: Vec<VertexId> = vds.to_vec();
    vds.sort_unstable();
    vds.dedup();
    if let Some(&bad) = vds.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: bad, n: g.n() });
    }
    if vds.contains(&z) {
        return Err(Error::InvalidDecomposition(format!(
            "deletion set must not contain the target vertex {z}"
        )));
    }
    build_decomposition(g, z, vds)
}

fn build_decomposition(g: &Graph, z: VertexId, vds: Vec<VertexId>) -> Result<ClusterDecomposition> {
    let n = g.n();
    let mut alive = vec![true; n];
    alive[z] = false;
    for &v in &vds {
        alive[v] = false;
    }

    // Connected components of the remaining graph; each must be a clique.
    let mut clusters: Vec<Vec<VertexId>> = Vec::new();
    let mut seen = vec![false; n];
    for start in 0..n {
        if !alive[start] || seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if alive[v] && !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        for (i, &a) in comp.iter().enumerate() {
            for &b in &comp[i + 1..] {
                if !g.has_edge(a, b) {
                    return Err(Error::InvalidDecomposition(format!(
                        "vertices {a} and {b} share a component but are not adjacent \
                         after removing the deletion set"
                    )));
                }
            }
        }
        clusters.push(comp);
    }
    clusters.sort_by_key(|c| c[0]);

    let bit_of = |v: VertexId| -> Option<u64> {
        if v == z {
            Some(1 << vds.len())
        } else {
            vds.binary_search(&v).ok().map(|i| 1 << i)
        }
    };
    let mut vertex_sig: Vec<Option<Signature>> = vec![None; n];
    for cluster in &clusters {
        for &v in cluster {
            let mut mask = 0u64;
            for &u in g.neighbors(v) {
                if let Some(bit) = bit_of(u) {
                    mask |= bit;
                }
            }
            vertex_sig[v] = Some(Signature(mask));
        }
    }
    let cluster_sig: Vec<Signature> = clusters
        .iter()
        .map(|c| {
            c.iter()
                .map(|&v| vertex_sig[v].expect("cluster vertices have signatures"))
                .fold(Signature::EMPTY, Signature::union)
        })
        .collect();

    Ok(ClusterDecomposition {
        z,
        vds,
        clusters,
        cluster_sig,
        vertex_sig,
    })
}

/// One component of a solution signature: a cluster signature together with
/// the distinct vertex signatures the solution touches inside one cluster
/// of that signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignatureElement {
    pub cluster_sig: Signature,
    /// Sorted, distinct, nonempty.
    pub vertex_sigs: Vec<Signature>,
}

/// The signature of a candidate solution: the set of signature elements of
/// the clusters it touches.
pub type SolutionSignature = Vec<SignatureElement>;

/// A complete iteration state of the betweenness enumeration: the
/// deletion-set part, the touched cluster signatures, per cluster signature
/// the family of vertex-signature sets, and the two count layers (how many
/// clusters realize each set, and how many vertices of each signature are
/// picked per marked cluster).
#[derive(Debug, Clone)]
pub struct BetweennessProfile {
    pub vds_part: Vec<VertexId>,
    pub cluster_sigs: BTreeSet<Signature>,
    pub families: BTreeMap<Signature, BTreeSet<Vec<Signature>>>,
    pub cluster_counts: BTreeMap<SignatureElement, usize>,
    pub vertex_counts: BTreeMap<(SignatureElement, Signature), usize>,
}

/// Shared per-instance tables for both enumeration solvers.
struct FptContext<'a> {
    dec: &'a ClusterDecomposition,
    /// Per cluster: addable vertices (not adjacent to z) grouped by
    /// signature, each group ascending.
    eligible: Vec<BTreeMap<Signature, Vec<VertexId>>>,
    /// Cluster indices ordered by (size descending, index ascending); the
    /// enumeration prefers larger clusters throughout.
    by_size: Vec<usize>,
    /// Deletion-set vertices that may be attached to z.
    vds_eligible: Vec<VertexId>,
    /// All addable cluster vertices, ascending; used for padding.
    all_eligible: Vec<VertexId>,
}

impl<'a> FptContext<'a> {
    fn new(inst: &'a ImprovementInstance, dec: &'a ClusterDecomposition) -> FptContext<'a> {
        let g = &inst.graph;
        let z = inst.z;
        let mut eligible: Vec<BTreeMap<Signature, Vec<VertexId>>> =
            vec![BTreeMap::new(); dec.clusters.len()];
        let mut all_eligible = Vec::new();
        for (i, cluster) in dec.clusters.iter().enumerate() {
            for &v in cluster {
                if g.has_edge(z, v) {
                    continue;
                }
                let sig = dec.vertex_sig[v].expect("cluster vertex");
                eligible[i].entry(sig).or_default().push(v);
                all_eligible.push(v);
            }
        }
        all_eligible.sort_unstable();
        let mut by_size: Vec<usize> = (0..dec.clusters.len()).collect();
        by_size.sort_by_key(|&i| (usize::MAX - dec.clusters[i].len(), i));
        let vds_eligible: Vec<VertexId> = dec
            .vds
            .iter()
            .copied()
            .filter(|&v| !g.has_edge(z, v))
            .collect();
        FptContext {
            dec,
            eligible,
            by_size,
            vds_eligible,
            all_eligible,
        }
    }

    /// Is cluster `j` eligible for an element: matching cluster signature
    /// and at least one addable vertex of every required vertex signature?
    fn cluster_eligible(&self, j: usize, elem: &SignatureElement) -> bool {
        self.dec.cluster_sig[j] == elem.cluster_sig
            && elem
                .vertex_sigs
                .iter()
                .all(|s| self.eligible[j].contains_key(s))
    }

    /// All realizable signature elements with at most `budget` vertex
    /// signatures, paired with their eligible clusters in by-size order.
    fn collect_elements(&self, budget: usize) -> Vec<(SignatureElement, Vec<usize>)> {
        let mut map: BTreeMap<SignatureElement, Vec<usize>> = BTreeMap::new();
        for &j in &self.by_size {
            let sigs: Vec<Signature> = self.eligible[j].keys().copied().collect();
            let max_take = budget.min(sigs.len());
            for_each_index_combination(sigs.len(), max_take, &mut |pick| {
                if pick.is_empty() {
                    return;
                }
                let elem = SignatureElement {
                    cluster_sig: self.dec.cluster_sig[j],
                    vertex_sigs: pick.iter().map(|&i| sigs[i]).collect(),
                };
                map.entry(elem).or_default().push(j);
            });
        }
        map.into_iter().collect()
    }
}

/// Calls `f` on every combination of `0..n` of sizes `0..=max_size`, in
/// increasing size then lexicographic order.
fn for_each_index_combination(n: usize, max_size: usize, f: &mut dyn FnMut(&[usize])) {
    let mut buf: Vec<usize> = Vec::new();
    for size in 0..=max_size.min(n) {
        buf.clear();
        buf.extend(0..size);
        loop {
            f(&buf);
            let mut advanced = false;
            let mut i = size;
            while i > 0 {
                i -= 1;
                if buf[i] != i + n - size {
                    buf[i] += 1;
                    for j in i + 1..size {
                        buf[j] = buf[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
}

/// Deterministic best-so-far tracker; prefers higher value, then fewer
/// additions, then the lexicographically smallest addition set, matching
/// the exact solvers' tie-break.
struct BestTracker<'a> {
    inst: &'a ImprovementInstance,
    best: Solution,
    evaluated: u64,
}

impl<'a> BestTracker<'a> {
    fn new(inst: &'a ImprovementInstance) -> BestTracker<'a> {
        let base = inst
            .evaluate(&[])
            .expect("empty addition set always evaluates");
        BestTracker {
            inst,
            best: Solution {
                additions: Vec::new(),
                achieved: base,
            },
            evaluated: 1,
        }
    }

    /// Evaluates attaching z to every vertex in `endpoints` (sorted,
    /// distinct, none adjacent to z).
    fn consider(&mut self, endpoints: &[VertexId]) {
        let mut additions: Vec<(VertexId, VertexId)> = endpoints
            .iter()
            .map(|&v| self.inst.graph.normalize_pair(self.inst.z, v))
            .collect();
        additions.sort_unstable();
        let achieved = self
            .inst
            .evaluate(&additions)
            .expect("enumerated endpoints are valid additions");
        self.evaluated += 1;
        let better = achieved > self.best.achieved
            || (achieved == self.best.achieved
                && (additions.len(), &additions)
                    < (self.best.additions.len(), &self.best.additions));
        if better {
            self.best = Solution { additions, achieved };
        }
    }
}

fn validate_decomposition(
    inst: &ImprovementInstance,
    dec: &ClusterDecomposition,
) -> Result<()> {
    if dec.z != inst.z {
        return Err(Error::InvalidDecomposition(format!(
            "decomposition was built for target {} but the instance targets {}",
            dec.z, inst.z
        )));
    }
    let rebuilt = decomposition_from_vds(&inst.graph, inst.z, &dec.vds)?;
    if rebuilt != *dec {
        return Err(Error::InvalidDecomposition(
            "clusters or signatures do not match the graph".into(),
        ));
    }
    Ok(())
}

/// Iterates over subsets of `vds_eligible` of size at most `k`.
fn for_each_vds_part(
    vds_eligible: &[VertexId],
    k: usize,
    f: &mut dyn FnMut(&[VertexId]),
) {
    for_each_index_combination(vds_eligible.len(), k.min(vds_eligible.len()), &mut |pick| {
        let part: Vec<VertexId> = pick.iter().map(|&i| vds_eligible[i]).collect();
        f(&part);
    });
}

/// Closeness improvement solver parameterized by the deletion distance to a
/// cluster graph.
///
/// For every subset of the deletion set and every realizable solution
/// signature, the solver places one vertex per required vertex signature in
/// the largest eligible cluster per element (the "most potent" choice,
/// enumerating ties and collisions), fills leftover budget with eligible
/// vertex sets from the remaining clusters in decreasing size order, pads
/// with arbitrary addable vertices while absent pairs remain, and evaluates
/// every completed candidate exactly.
pub fn solve_closeness_fpt(
    inst: &ImprovementInstance,
    dec: &ClusterDecomposition,
) -> Result<SolverReport> {
    let start = Instant::now();
    if inst.kind.directed || inst.kind.centrality != CentralityKind::Closeness {
        return Err(Error::KindMismatch(
            "this solver handles undirected closeness instances".into(),
        ));
    }
    validate_decomposition(inst, dec)?;
    let ctx = FptContext::new(inst, dec);
    let mut tracker = BestTracker::new(inst);

    for_each_vds_part(&ctx.vds_eligible, inst.k, &mut |vds_part| {
        let budget = inst.k - vds_part.len();
        let elements = ctx.collect_elements(budget);
        // Enumerate solution signatures: subsets of realizable elements
        // whose minimal realizations fit the budget.
        let mut signature: SolutionSignature = Vec::new();
        let mut chosen_idx: Vec<usize> = Vec::new();
        enumerate_signatures(
            &ctx,
            &elements,
            0,
            budget,
            &mut signature,
            &mut chosen_idx,
            vds_part,
            &mut tracker,
        );
    });

    Ok(SolverReport {
        best: tracker.best,
        candidates_evaluated: tracker.evaluated,
        elapsed: start.elapsed(),
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_signatures(
    ctx: &FptContext,
    elements: &[(SignatureElement, Vec<usize>)],
    from: usize,
    budget_left: usize,
    signature: &mut SolutionSignature,
    chosen_idx: &mut Vec<usize>,
    vds_part: &[VertexId],
    tracker: &mut BestTracker,
) {
    realize_signature(ctx, elements, chosen_idx, vds_part, budget_left, tracker);
    for i in from..elements.len() {
        let cost = elements[i].0.vertex_sigs.len();
        if cost > budget_left {
            continue;
        }
        signature.push(elements[i].0.clone());
        chosen_idx.push(i);
        enumerate_signatures(
            ctx,
            elements,
            i + 1,
            budget_left - cost,
            signature,
            chosen_idx,
            vds_part,
            tracker,
        );
        chosen_idx.pop();
        signature.pop();
    }
}

/// Builds and evaluates every candidate for one (vds part, signature)
/// iteration: all injective most-potent reduct assignments, each extended
/// by the largest-cluster remainder fill and deterministic padding.
fn realize_signature(
    ctx: &FptContext,
    elements: &[(SignatureElement, Vec<usize>)],
    chosen_idx: &[usize],
    vds_part: &[VertexId],
    budget_after_reduct: usize,
    tracker: &mut BestTracker,
) {
    let total = chosen_idx.len();
    let mut used = vec![false; ctx.dec.clusters.len()];
    let mut assignment: Vec<usize> = Vec::with_capacity(total);

    fn assign(
        ctx: &FptContext,
        elements: &[(SignatureElement, Vec<usize>)],
        chosen_idx: &[usize],
        pos: usize,
        used: &mut Vec<bool>,
        assignment: &mut Vec<usize>,
        vds_part: &[VertexId],
        budget_after_reduct: usize,
        tracker: &mut BestTracker,
    ) {
        if pos == chosen_idx.len() {
            // Reduct complete: collect its vertices, then fill and pad.
            let mut endpoints: Vec<VertexId> = vds_part.to_vec();
            for (p, &elem_i) in chosen_idx.iter().enumerate() {
                let (elem, _) = &elements[elem_i];
                let j = assignment[p];
                for s in &elem.vertex_sigs {
                    endpoints.push(ctx.eligible[j][s][0]);
                }
            }
            let chosen_elems: Vec<&SignatureElement> =
                chosen_idx.iter().map(|&i| &elements[i].0).collect();
            fill_remainder(
                ctx,
                &chosen_elems,
                0,
                used,
                budget_after_reduct,
                &mut endpoints,
                tracker,
            );
            return;
        }
        let (elem, eligible_clusters) = &elements[chosen_idx[pos]];
        // Top `total` eligible clusters per element suffice: at most
        // `total - 1` can be occupied by the other elements, and swapping
        // an element up into a free larger cluster never lowers the value.
        let window = chosen_idx.len().max(1);
        let mut any = false;
        for &j in eligible_clusters.iter().take(window + budget_after_reduct) {
            if used[j] || !ctx.cluster_eligible(j, elem) {
                continue;
            }
            any = true;
            used[j] = true;
            assignment.push(j);
            assign(
                ctx,
                elements,
                chosen_idx,
                pos + 1,
                used,
                assignment,
                vds_part,
                budget_after_reduct,
                tracker,
            );
            assignment.pop();
            used[j] = false;
        }
        let _ = any;
    }

    assign(
        ctx,
        elements,
        chosen_idx,
        0,
        &mut used,
        &mut assignment,
        vds_part,
        budget_after_reduct,
        tracker,
    );
}

/// Walks the remaining clusters in decreasing size order; every cluster
/// eligible for one of the signature's elements contributes one vertex per
/// required signature while the budget allows, branching when several
/// elements fit. Leaves are padded to the full budget with the smallest
/// addable vertices and evaluated.
#[allow(clippy::too_many_arguments)]
fn fill_remainder(
    ctx: &FptContext,
    signature: &[&SignatureElement],
    pos: usize,
    used: &mut Vec<bool>,
    budget: usize,
    endpoints: &mut Vec<VertexId>,
    tracker: &mut BestTracker,
) {
    if budget == 0 || pos == ctx.by_size.len() {
        pad_and_consider(ctx, endpoints, budget, tracker);
        return;
    }
    let j = ctx.by_size[pos];
    if used[j] {
        fill_remainder(ctx, signature, pos + 1, used, budget, endpoints, tracker);
        return;
    }
    let fitting: Vec<&SignatureElement> = signature
        .iter()
        .copied()
        .filter(|e| e.vertex_sigs.len() <= budget && ctx.cluster_eligible(j, e))
        .collect();
    if fitting.is_empty() {
        fill_remainder(ctx, signature, pos + 1, used, budget, endpoints, tracker);
        return;
    }
    for elem in fitting {
        used[j] = true;
        let before = endpoints.len();
        for s in &elem.vertex_sigs {
            endpoints.push(ctx.eligible[j][s][0]);
        }
        fill_remainder(
            ctx,
            signature,
            pos + 1,
            used,
            budget - elem.vertex_sigs.len(),
            endpoints,
            tracker,
        );
        endpoints.truncate(before);
        used[j] = false;
    }
}

fn pad_and_consider(
    ctx: &FptContext,
    endpoints: &[VertexId],
    budget: usize,
    tracker: &mut BestTracker,
) {
    let mut full: Vec<VertexId> = endpoints.to_vec();
    if budget > 0 {
        let taken: BTreeSet<VertexId> = full.iter().copied().collect();
        let mut left = budget;
        for &v in &ctx.all_eligible {
            if left == 0 {
                break;
            }
            if !taken.contains(&v) {
                full.push(v);
                left -= 1;
            }
        }
    }
    full.sort_unstable();
    full.dedup();
    tracker.consider(&full);
}

/// Betweenness improvement solver parameterized by the deletion distance to
/// a cluster graph combined with the budget.
///
/// Enumerates complete [`BetweennessProfile`]s — deletion-set part, touched
/// cluster signatures, vertex-signature families, and both count layers —
/// marks the largest eligible clusters for each counted family member
/// (enumerating ties and collisions injectively), picks the smallest
/// eligible vertices of each required signature in every marked cluster,
/// and evaluates each completed candidate exactly.
pub fn solve_betweenness_fpt(
    inst: &ImprovementInstance,
    dec: &ClusterDecomposition,
) -> Result<SolverReport> {
    let start = Instant::now();
    if inst.kind.directed || inst.kind.centrality != CentralityKind::Betweenness {
        return Err(Error::KindMismatch(
            "this solver handles undirected betweenness instances".into(),
        ));
    }
    validate_decomposition(inst, dec)?;
    let ctx = FptContext::new(inst, dec);
    let mut tracker = BestTracker::new(inst);

    for_each_vds_part(&ctx.vds_eligible, inst.k, &mut |vds_part| {
        let budget = inst.k - vds_part.len();
        let elements = ctx.collect_elements(budget);
        let mut groups: Vec<CountedGroup> = Vec::new();
        enumerate_profiles(&ctx, &elements, 0, budget, vds_part, &mut groups, &mut tracker);
    });

    Ok(SolverReport {
        best: tracker.best,
        candidates_evaluated: tracker.evaluated,
        elapsed: start.elapsed(),
    })
}

/// One counted family member of a betweenness profile: `clusters` clusters
/// realize the element, each contributing `per_sig[i]` vertices of the
/// element's i-th vertex signature.
#[derive(Debug, Clone)]
struct CountedGroup {
    elem_idx: usize,
    clusters: usize,
    per_sig: Vec<usize>,
}

impl CountedGroup {
    fn cost(&self) -> usize {
        self.clusters * self.per_sig.iter().sum::<usize>()
    }
}

fn enumerate_profiles(
    ctx: &FptContext,
    elements: &[(SignatureElement, Vec<usize>)],
    from: usize,
    budget_left: usize,
    vds_part: &[VertexId],
    groups: &mut Vec<CountedGroup>,
    tracker: &mut BestTracker,
) {
    realize_profile(ctx, elements, groups, vds_part, tracker);
    for i in from..elements.len() {
        let sig_count = elements[i].0.vertex_sigs.len();
        if sig_count > budget_left {
            continue;
        }
        // All per-signature counts >= 1 and cluster counts >= 1 with total
        // cost within budget.
        let mut per_sig = vec![1usize; sig_count];
        loop {
            let vertices_per_cluster: usize = per_sig.iter().sum();
            if vertices_per_cluster <= budget_left {
                for clusters in 1..=budget_left / vertices_per_cluster {
                    let group = CountedGroup {
                        elem_idx: i,
                        clusters,
                        per_sig: per_sig.clone(),
                    };
                    let cost = group.cost();
                    groups.push(group);
                    enumerate_profiles(
                        ctx,
                        elements,
                        i + 1,
                        budget_left - cost,
                        vds_part,
                        groups,
                        tracker,
                    );
                    groups.pop();
                }
            }
            // Advance the per-signature count vector (bounded odometer).
            let mut pos = 0;
            loop {
                if pos == sig_count {
                    break;
                }
                per_sig[pos] += 1;
                if per_sig.iter().sum::<usize>() <= budget_left {
                    break;
                }
                per_sig[pos] = 1;
                pos += 1;
            }
            if pos == sig_count {
                break;
            }
        }
    }
}

/// Marks clusters for every counted group (largest eligible first,
/// enumerating all injective choices within the provably sufficient
/// window), selects the smallest eligible vertices per signature in each
/// marked cluster, and evaluates the candidate.
fn realize_profile(
    ctx: &FptContext,
    elements: &[(SignatureElement, Vec<usize>)],
    groups: &[CountedGroup],
    vds_part: &[VertexId],
    tracker: &mut BestTracker,
) {
    // Record the profile explicitly; it is the unit of iteration the
    // enumeration is organized around.
    let profile = make_profile(elements, groups, vds_part);
    let total_marks: usize = groups.iter().map(|g| g.clusters).sum();

    let mut used = vec![false; ctx.dec.clusters.len()];
    let mut endpoints: Vec<VertexId> = vds_part.to_vec();

    fn group_eligible(ctx: &FptContext, j: usize, elem: &SignatureElement, group: &CountedGroup) -> bool {
        ctx.dec.cluster_sig[j] == elem.cluster_sig
            && elem
                .vertex_sigs
                .iter()
                .zip(&group.per_sig)
                .all(|(s, &need)| ctx.eligible[j].get(s).map_or(0, Vec::len) >= need)
    }

    fn mark(
        ctx: &FptContext,
        elements: &[(SignatureElement, Vec<usize>)],
        groups: &[CountedGroup],
        g_idx: usize,
        total_marks: usize,
        used: &mut Vec<bool>,
        endpoints: &mut Vec<VertexId>,
        profile: &BetweennessProfile,
        tracker: &mut BestTracker,
    ) {
        if g_idx == groups.len() {
            let mut full = endpoints.clone();
            full.sort_unstable();
            full.dedup();
            debug_assert_eq!(full.len(), endpoints.len());
            tracker.consider(&full);
            let _ = profile;
            return;
        }
        let group = &groups[g_idx];
        let (elem, eligible_clusters) = &elements[group.elem_idx];
        let candidates: Vec<usize> = eligible_clusters
            .iter()
            .copied()
            .filter(|&j| !used[j] && group_eligible(ctx, j, elem, group))
            .take(total_marks + group.clusters)
            .collect();
        if candidates.len() < group.clusters {
            return;
        }
        for_each_index_combination(candidates.len(), group.clusters, &mut |pick| {
            if pick.len() != group.clusters {
                return;
            }
            let marked: Vec<usize> = pick.iter().map(|&i| candidates[i]).collect();
            let before = endpoints.len();
            for &j in &marked {
                used[j] = true;
                for (s, &count) in elem.vertex_sigs.iter().zip(&group.per_sig) {
                    endpoints.extend(ctx.eligible[j][s].iter().take(count));
                }
            }
            mark(
                ctx, elements, groups, g_idx + 1, total_marks, used, endpoints, profile,
                tracker,
            );
            endpoints.truncate(before);
            for &j in &marked {
                used[j] = false;
            }
        });
    }

    mark(
        ctx,
        elements,
        groups,
        0,
        total_marks,
        &mut used,
        &mut endpoints,
        &profile,
        tracker,
    );
}

fn make_profile(
    elements: &[(SignatureElement, Vec<usize>)],
    groups: &[CountedGroup],
    vds_part: &[VertexId],
) -> BetweennessProfile {
    let mut profile = BetweennessProfile {
        vds_part: vds_part.to_vec(),
        cluster_sigs: BTreeSet::new(),
        families: BTreeMap::new(),
        cluster_counts: BTreeMap::new(),
        vertex_counts: BTreeMap::new(),
    };
    for group in groups {
        let elem = &elements[group.elem_idx].0;
        profile.cluster_sigs.insert(elem.cluster_sig);
        profile
            .families
            .entry(elem.cluster_sig)
            .or_default()
            .insert(elem.vertex_sigs.clone());
        profile.cluster_counts.insert(elem.clone(), group.clusters);
        for (s, &count) in elem.vertex_sigs.iter().zip(&group.per_sig) {
            profile.vertex_counts.insert((elem.clone(), *s), count);
        }
    }
    profile
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::{betweenness, closeness, ratio};
    use crate::exact::solve_incident;
    use crate::gen::planted_cluster;
    use crate::graph::six_vertex_example;
    use crate::instance::ProblemKind;

    fn two_triangles_plus_z() -> Graph {
        Graph::undirected(7, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    /// Exhaustive check that no deletion set smaller than `size` works.
    fn assert_minimum_cvd(g: &Graph, z: VertexId, size: usize) {
        let others: Vec<VertexId> = (0..g.n()).filter(|&v| v != z).collect();
        for smaller in 0..size {
            let mut found = false;
            for_each_index_combination(others.len(), smaller, &mut |pick| {
                if pick.len() != smaller || found {
                    return;
                }
                let vds: Vec<VertexId> = pick.iter().map(|&i| others[i]).collect();
                if decomposition_from_vds(g, z, &vds).is_ok() {
                    found = true;
                }
            });
            assert!(!found, "a deletion set of size {smaller} exists");
        }
    }

    #[test]
    fn cvd_two_triangles() {
        let g = two_triangles_plus_z();
        let dec = cluster_vertex_deletion(&g, 6).unwrap();
        assert_eq!(dec.ell(), 0);
        assert_eq!(dec.clusters.len(), 2);
        assert_eq!(dec.clusters[0], vec![0, 1, 2]);
        assert_eq!(dec.clusters[1], vec![3, 4, 5]);
    }

    #[test]
    fn cvd_path() {
        let g = Graph::undirected(4, &[(0, 1), (1, 2)]).unwrap();
        let dec = cluster_vertex_deletion(&g, 3).unwrap();
        assert_eq!(dec.ell(), 1);
        assert_minimum_cvd(&g, 3, 1);
    }

    #[test]
    fn cvd_six_vertex_example() {
        let g = Graph::undirected(7, &six_vertex_example().edges()).unwrap();
        let dec = cluster_vertex_deletion(&g, 6).unwrap();
        assert_eq!(dec.ell(), 2);
        assert_minimum_cvd(&g, 6, 2);
        // The deletion set {u2, u3} works; whatever the branching returned
        // must leave a cluster graph.
        assert!(decomposition_from_vds(&g, 6, &[1, 2]).is_ok());
    }

    #[test]
    fn decomposition_validation() {
        let g = Graph::undirected(4, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            decomposition_from_vds(&g, 3, &[]),
            Err(Error::InvalidDecomposition(_))
        ));
        assert!(matches!(
            decomposition_from_vds(&g, 3, &[3]),
            Err(Error::InvalidDecomposition(_))
        ));
        assert!(decomposition_from_vds(&g, 3, &[1]).is_ok());
        assert!(decomposition_from_vds(&g, 3, &[0, 2]).is_ok());
    }

    #[test]
    fn signatures_encode_vds_and_z_adjacency() {
        // Path 0-1-2 with z=3 adjacent to 2; delete vertex 1.
        let g = Graph::undirected(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let dec = decomposition_from_vds(&g, 3, &[1]).unwrap();
        assert_eq!(dec.clusters, vec![vec![0], vec![2]]);
        assert_eq!(dec.vertex_sig[0], Some(Signature(0b01)));
        assert_eq!(dec.vertex_sig[2], Some(Signature(0b11)));
        assert!(dec.sig_has_z(dec.cluster_sig[1]));
        assert!(!dec.sig_has_z(dec.cluster_sig[0]));
    }

    #[test]
    fn closeness_fpt_six_vertex_example() {
        let g = Graph::undirected(7, &six_vertex_example().edges()).unwrap();
        let inst =
            ImprovementInstance::new(g, 6, 2, ratio(4, 1), ProblemKind::CLOSENESS).unwrap();
        let dec = decomposition_from_vds(&inst.graph, 6, &[1, 2]).unwrap();
        let report = solve_closeness_fpt(&inst, &dec).unwrap();
        assert_eq!(report.best.achieved, ratio(4, 1));
        assert_eq!(
            report.best.achieved,
            solve_incident(&inst).best.achieved
        );
    }

    #[test]
    fn closeness_fpt_two_triangles() {
        let g = two_triangles_plus_z();
        let dec = cluster_vertex_deletion(&g, 6).unwrap();
        for (k, want) in [(1usize, ratio(2, 1)), (2, ratio(4, 1))] {
            let inst = ImprovementInstance::new(
                g.clone(),
                6,
                k,
                want.clone(),
                ProblemKind::CLOSENESS,
            )
            .unwrap();
            let report = solve_closeness_fpt(&inst, &dec).unwrap();
            assert_eq!(report.best.achieved, want);
        }
    }

    #[test]
    fn betweenness_fpt_two_triangles() {
        let g = two_triangles_plus_z();
        let dec = cluster_vertex_deletion(&g, 6).unwrap();
        let inst = ImprovementInstance::new(
            g.clone(),
            6,
            2,
            ratio(9, 1),
            ProblemKind::BETWEENNESS,
        )
        .unwrap();
        let report = solve_betweenness_fpt(&inst, &dec).unwrap();
        assert_eq!(report.best.achieved, ratio(9, 1));

        let zero = ImprovementInstance::new(g, 6, 0, ratio(0, 1), ProblemKind::BETWEENNESS)
            .unwrap();
        let report = solve_betweenness_fpt(&zero, &dec).unwrap();
        assert_eq!(report.best.achieved, ratio(0, 1));
        assert!(report.best.additions.is_empty());
    }

    #[test]
    fn fpt_solvers_match_incident_on_planted_graphs() {
        for seed in 0..6u64 {
            let g = planted_cluster(&[3, 3], 1, 0.5, 0.3, seed);
            let z = g.n() - 1;
            let dec = cluster_vertex_deletion(&g, z).unwrap();
            assert!(dec.ell() <= 1);
            let c_inst = ImprovementInstance::new(
                g.clone(),
                z,
                2,
                ratio(0, 1),
                ProblemKind::CLOSENESS,
            )
            .unwrap();
            assert_eq!(
                solve_closeness_fpt(&c_inst, &dec).unwrap().best.achieved,
                solve_incident(&c_inst).best.achieved,
                "closeness mismatch at seed {seed}"
            );
            let b_inst =
                ImprovementInstance::new(g, z, 2, ratio(0, 1), ProblemKind::BETWEENNESS)
                    .unwrap();
            assert_eq!(
                solve_betweenness_fpt(&b_inst, &dec).unwrap().best.achieved,
                solve_incident(&b_inst).best.achieved,
                "betweenness mismatch at seed {seed}"
            );
        }
    }

    #[test]
    fn fpt_rejects_wrong_kind_and_stale_decomposition() {
        let g = two_triangles_plus_z();
        let dec = cluster_vertex_deletion(&g, 6).unwrap();
        let b_inst = ImprovementInstance::new(
            g.clone(),
            6,
            1,
            ratio(0, 1),
            ProblemKind::BETWEENNESS,
        )
        .unwrap();
        assert!(matches!(
            solve_closeness_fpt(&b_inst, &dec),
            Err(Error::KindMismatch(_))
        ));

        // Decomposition built for a different graph.
        let other = Graph::undirected(7, &[(0, 1), (1, 2)]).unwrap();
        let inst =
            ImprovementInstance::new(other, 6, 1, ratio(0, 1), ProblemKind::CLOSENESS).unwrap();
        assert!(matches!(
            solve_closeness_fpt(&inst, &dec),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn same_signature_twins_are_interchangeable() {
        // Twins inside one cluster: swapping them never changes the value.
        let g = planted_cluster(&[4, 3], 1, 0.4, 0.4, 9);
        let z = g.n() - 1;
        let dec = cluster_vertex_deletion(&g, z).unwrap();
        for j in 0..dec.clusters.len() {
            let cluster = &dec.clusters[j];
            for (ai, &a) in cluster.iter().enumerate() {
                for &b in &cluster[ai + 1..] {
                    if dec.vertex_sig[a] != dec.vertex_sig[b]
                        || g.has_edge(z, a)
                        || g.has_edge(z, b)
                    {
                        continue;
                    }
                    let with_a = g.add_edges(&[g.normalize_pair(z, a)]).unwrap();
                    let with_b = g.add_edges(&[g.normalize_pair(z, b)]).unwrap();
                    assert_eq!(
                        closeness(&with_a, z).unwrap(),
                        closeness(&with_b, z).unwrap()
                    );
                    assert_eq!(
                        betweenness(&with_a, z).unwrap(),
                        betweenness(&with_b, z).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn equal_size_equal_signature_clusters_are_interchangeable() {
        // Two size-3 clusters, z isolated: attaching to either yields the
        // same closeness.
        let g = two_triangles_plus_z();
        let a = closeness(&g.add_edges(&[(0, 6)]).unwrap(), 6).unwrap();
        let b = closeness(&g.add_edges(&[(3, 6)]).unwrap(), 6).unwrap();
        assert_eq!(a, b);
    }
}
