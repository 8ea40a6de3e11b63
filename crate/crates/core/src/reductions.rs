//! Instance generators that translate Dominating Set and Set Cover inputs
//! into centrality-improvement instances with closed-form thresholds, plus
//! tiny brute-force oracles for the source problems so that the translations
//! can be validated end to end.
//!
//! Each generator emits a role map describing what every gadget vertex
//! stands for, so tests can assert structure rather than just counts.

use std::fmt;

use crate::centrality::ratio;
use crate::error::{Error, Result};
use crate::graph::{meaningful_lines, parse_graph_block, Graph, VertexId};
use crate::instance::{ImprovementInstance, ProblemKind};

/// Dominating Set input: find at most `k` vertices such that every vertex
/// is in the set or adjacent to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingSetInstance {
    pub graph: Graph,
    pub k: usize,
}

impl DominatingSetInstance {
    pub fn new(graph: Graph, k: usize) -> Result<DominatingSetInstance> {
        if graph.is_directed() {
            return Err(Error::RequiresUndirected);
        }
        Ok(DominatingSetInstance { graph, k })
    }
}

/// Set Cover input: universe `{0, .., universe-1}`, a family of nonempty
/// subsets, and a budget `k` of sets to pick.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub family: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetCoverInstance {
    pub fn new(universe: usize, family: Vec<Vec<usize>>, k: usize) -> Result<SetCoverInstance> {
        let mut normalized = Vec::with_capacity(family.len());
        for (j, set) in family.into_iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidArgument(format!("set {j} is empty")));
            }
            let mut set = set;
            set.sort_unstable();
            set.dedup();
            if let Some(&e) = set.iter().find(|&&e| e >= universe) {
                return Err(Error::InvalidArgument(format!(
                    "set {j} contains element {e} outside the universe of size {universe}"
                )));
            }
            normalized.push(set);
        }
        Ok(SetCoverInstance {
            universe,
            family: normalized,
            k,
        })
    }
}

/// What a vertex of a generated instance stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Copy of vertex `i` of the source graph.
    Original(usize),
    /// Degree-2 spacer between `original_i` and `y_i`.
    X(usize),
    /// Spacer adjacent to the target vertex.
    Y(usize),
    /// Relay between the target vertex and `set_i` in the strongly
    /// connected variant.
    W(usize),
    /// Feeder vertex with a single arc into the target.
    C(usize),
    /// Universe element `i` of a Set Cover input.
    Element(usize),
    /// Set `j` of a Set Cover input.
    SetVertex(usize),
    /// The target vertex of the closeness constructions.
    Z,
    /// The target vertex of the betweenness construction.
    Z1,
    /// Fan vertex `i` between `z1` and `z3`.
    Z2(usize),
    Z3,
    Z4,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Original(i) => write!(f, "original_{i}"),
            Role::X(i) => write!(f, "x_{i}"),
            Role::Y(i) => write!(f, "y_{i}"),
            Role::W(i) => write!(f, "w_{i}"),
            Role::C(i) => write!(f, "c_{i}"),
            Role::Element(i) => write!(f, "element_{i}"),
            Role::SetVertex(i) => write!(f, "set_{i}"),
            Role::Z => write!(f, "z"),
            Role::Z1 => write!(f, "z1"),
            Role::Z2(i) => write!(f, "z2_{i}"),
            Role::Z3 => write!(f, "z3"),
            Role::Z4 => write!(f, "z4"),
        }
    }
}

/// A generated improvement instance with its vertex roles and, for the
/// betweenness construction, the fan size `alpha`.
#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub instance: ImprovementInstance,
    pub roles: Vec<Role>,
    pub alpha: Option<usize>,
}

/// Dominating Set to (undirected) Closeness Improvement: add an isolated
/// target vertex `z`; threshold `r = k + (n - k)/2`. A dominating set of
/// size `k` puts `k` vertices at distance 1 and the rest at distance 2.
pub fn ds_to_closeness(ds: &DominatingSetInstance) -> ReductionOutput {
    let n = ds.graph.n();
    let g = Graph::undirected(n + 1, &ds.graph.edges()).expect("copying a valid graph");
    let r = ratio(ds.k as i64, 1) + ratio(n as i64 - ds.k as i64, 2);
    let mut roles: Vec<Role> = (0..n).map(Role::Original).collect();
    roles.push(Role::Z);
    ReductionOutput {
        instance: ImprovementInstance::new(g, n, ds.k, r, ProblemKind::CLOSENESS)
            .expect("generated instance is valid"),
        roles,
        alpha: None,
    }
}

/// Dominating Set to Closeness Improvement on low-diameter graphs: append a
/// path `original_i - x_i - y_i - z` for every source vertex; threshold
/// `r = 2n + k/2`. The output has `3n + 1` vertices and diameter at most 6.
pub fn ds_to_closeness_diam4(ds: &DominatingSetInstance) -> ReductionOutput {
    let n = ds.graph.n();
    let x = |i: usize| n + i;
    let y = |i: usize| 2 * n + i;
    let z = 3 * n;
    let mut edges = ds.graph.edges();
    for i in 0..n {
        edges.push((i, x(i)));
        edges.push((x(i), y(i)));
        edges.push((y(i), z));
    }
    let g = Graph::undirected(3 * n + 1, &edges).expect("gadget edges are valid");
    let r = ratio(2 * n as i64, 1) + ratio(ds.k as i64, 2);
    let mut roles: Vec<Role> = (0..n).map(Role::Original).collect();
    roles.extend((0..n).map(Role::X));
    roles.extend((0..n).map(Role::Y));
    roles.push(Role::Z);
    ReductionOutput {
        instance: ImprovementInstance::new(g, z, ds.k, r, ProblemKind::CLOSENESS)
            .expect("generated instance is valid"),
        roles,
        alpha: None,
    }
}

/// Set Cover to Directed Closeness Improvement: element vertices, set
/// vertices with arcs `set_j -> element_i` for membership, and an isolated
/// target `z`; threshold `r = k + n/2`. The output is acyclic.
pub fn sc_to_directed_closeness(sc: &SetCoverInstance) -> ReductionOutput {
    let n = sc.universe;
    let m = sc.family.len();
    let set_vertex = |j: usize| n + j;
    let z = n + m;
    let mut arcs = Vec::new();
    for (j, set) in sc.family.iter().enumerate() {
        for &i in set {
            arcs.push((set_vertex(j), i));
        }
    }
    let g = Graph::directed(n + m + 1, &arcs).expect("gadget arcs are valid");
    let r = ratio(sc.k as i64, 1) + ratio(n as i64, 2);
    let mut roles: Vec<Role> = (0..n).map(Role::Element).collect();
    roles.extend((0..m).map(Role::SetVertex));
    roles.push(Role::Z);
    ReductionOutput {
        instance: ImprovementInstance::new(g, z, sc.k, r, ProblemKind::DIRECTED_CLOSENESS)
            .expect("generated instance is valid"),
        roles,
        alpha: None,
    }
}

/// Set Cover to Directed Closeness Improvement on strongly connected
/// graphs: extends [`sc_to_directed_closeness`] with relay vertices
/// (`z -> w_j -> set_j`) and return arcs from every gadget vertex back to
/// `z`; threshold `r = k + m + (n + m - k)/2` (with the number of sets `m`
/// and the universe size `n` kept distinct). The output is strongly
/// connected with diameter at most 4.
pub fn sc_to_directed_closeness_diam4(sc: &SetCoverInstance) -> ReductionOutput {
    let n = sc.universe;
    let m = sc.family.len();
    let set_vertex = |j: usize| n + j;
    let w = |j: usize| n + m + j;
    let z = n + 2 * m;
    let mut arcs = Vec::new();
    for (j, set) in sc.family.iter().enumerate() {
        for &i in set {
            arcs.push((set_vertex(j), i));
        }
    }
    for j in 0..m {
        arcs.push((z, w(j)));
        arcs.push((w(j), set_vertex(j)));
        arcs.push((set_vertex(j), z));
        arcs.push((w(j), z));
    }
    for i in 0..n {
        arcs.push((i, z));
    }
    let g = Graph::directed(n + 2 * m + 1, &arcs).expect("gadget arcs are valid");
    let r = ratio(sc.k as i64 + m as i64, 1)
        + ratio(n as i64 + m as i64 - sc.k as i64, 2);
    let mut roles: Vec<Role> = (0..n).map(Role::Element).collect();
    roles.extend((0..m).map(Role::SetVertex));
    roles.extend((0..m).map(Role::W));
    roles.push(Role::Z);
    ReductionOutput {
        instance: ImprovementInstance::new(g, z, sc.k, r, ProblemKind::DIRECTED_CLOSENESS)
            .expect("generated instance is valid"),
        roles,
        alpha: None,
    }
}

/// Smallest integer strictly greater than `3k(k-1)/2`, the fan size used by
/// [`ds_to_betweenness`]. `k(k-1)` is even, so the bound is an integer.
pub fn betweenness_alpha(k: usize) -> usize {
    3 * k * (k - 1) / 2 + 1
}

/// Dominating Set to (undirected) Betweenness Improvement. Copies the input
/// graph, adds the target `z1`, a fan `z2_1..z2_alpha` between `z1` and
/// `z3`, the triangle `z1 z3 z4`, and connects `z4` to every original
/// vertex; threshold `r = alpha*k + (2/3)alpha(n-k) + (k + alpha +
/// C(alpha,2))/2` with the smallest valid `alpha`. The output has
/// diameter 3. Requires `k >= 1`.
pub fn ds_to_betweenness(ds: &DominatingSetInstance) -> Result<ReductionOutput> {
    if ds.k == 0 {
        return Err(Error::InvalidArgument(
            "betweenness construction requires k >= 1".into(),
        ));
    }
    let n = ds.graph.n();
    let k = ds.k;
    let alpha = betweenness_alpha(k);
    let z1 = n;
    let z2 = |i: usize| n + 1 + i;
    let z3 = n + 1 + alpha;
    let z4 = n + 2 + alpha;
    let mut edges = ds.graph.edges();
    for i in 0..alpha {
        edges.push((z1, z2(i)));
        edges.push((z2(i), z3));
    }
    edges.push((z1, z3));
    edges.push((z1, z4));
    edges.push((z3, z4));
    for i in 0..n {
        edges.push((z4, i));
    }
    let g = Graph::undirected(n + 3 + alpha, &edges).expect("gadget edges are valid");
    let (a, kk, nn) = (alpha as i64, k as i64, n as i64);
    let r = ratio(a * kk, 1)
        + ratio(2 * a * (nn - kk), 3)
        + ratio(kk + a + a * (a - 1) / 2, 2);
    let mut roles: Vec<Role> = (0..n).map(Role::Original).collect();
    roles.push(Role::Z1);
    roles.extend((0..alpha).map(Role::Z2));
    roles.push(Role::Z3);
    roles.push(Role::Z4);
    Ok(ReductionOutput {
        instance: ImprovementInstance::new(g, z1, k, r, ProblemKind::BETWEENNESS)
            .expect("generated instance is valid"),
        roles,
        alpha: Some(alpha),
    })
}

/// Set Cover to Directed Betweenness Improvement: element and set vertices
/// with membership arcs, the target `z`, and `m(m+n-1)` feeder vertices
/// with arcs into `z`; threshold `r = (k+n) * m * (m+n-1)`. The output is
/// acyclic.
pub fn sc_to_directed_betweenness(sc: &SetCoverInstance) -> ReductionOutput {
    let n = sc.universe;
    let m = sc.family.len();
    let feeders = (m as i64 * (m as i64 + n as i64 - 1)).max(0) as usize;
    let set_vertex = |j: usize| n + j;
    let z = n + m;
    let c = |t: usize| n + m + 1 + t;
    let mut arcs = Vec::new();
    for (j, set) in sc.family.iter().enumerate() {
        for &i in set {
            arcs.push((set_vertex(j), i));
        }
    }
    for t in 0..feeders {
        arcs.push((c(t), z));
    }
    let g = Graph::directed(n + m + 1 + feeders, &arcs).expect("gadget arcs are valid");
    let r = ratio((sc.k as i64 + n as i64) * feeders as i64, 1);
    let mut roles: Vec<Role> = (0..n).map(Role::Element).collect();
    roles.extend((0..m).map(Role::SetVertex));
    roles.push(Role::Z);
    roles.extend((0..feeders).map(Role::C));
    ReductionOutput {
        instance: ImprovementInstance::new(g, z, sc.k, r, ProblemKind::DIRECTED_BETWEENNESS)
            .expect("generated instance is valid"),
        roles,
        alpha: None,
    }
}

/// Size guard for the brute-force source-problem oracles.
pub const ORACLE_LIMIT: usize = 20;

/// Brute-force Dominating Set oracle: returns a smallest dominating set of
/// size at most `k` if one exists. Guarded to graphs with at most
/// [`ORACLE_LIMIT`] vertices.
pub fn solve_dominating_set_bf(g: &Graph, k: usize) -> Result<Option<Vec<VertexId>>> {
    if g.is_directed() {
        return Err(Error::RequiresUndirected);
    }
    let n = g.n();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleGuard {
            size: n,
            limit: ORACLE_LIMIT,
        });
    }
    let dominates = |set: &[VertexId]| {
        (0..n).all(|v| set.contains(&v) || g.neighbors(v).iter().any(|u| set.contains(u)))
    };
    let mut found: Option<Vec<VertexId>> = None;
    for_each_combination(n, k.min(n), &mut |set| {
        if found.is_none() && dominates(set) {
            found = Some(set.to_vec());
        }
        found.is_some()
    });
    Ok(found)
}

/// Brute-force Set Cover oracle: returns the indices of a smallest
/// subfamily of size at most `k` whose union is the universe, if any.
/// Guarded to families of at most [`ORACLE_LIMIT`] sets.
pub fn solve_set_cover_bf(sc: &SetCoverInstance) -> Result<Option<Vec<usize>>> {
    let m = sc.family.len();
    if m > ORACLE_LIMIT {
        return Err(Error::OracleGuard {
            size: m,
            limit: ORACLE_LIMIT,
        });
    }
    let covers = |pick: &[usize]| {
        let mut hit = vec![false; sc.universe];
        for &j in pick {
            for &e in &sc.family[j] {
                hit[e] = true;
            }
        }
        hit.iter().all(|&h| h)
    };
    let mut found: Option<Vec<usize>> = None;
    for_each_combination(m, sc.k.min(m), &mut |pick| {
        if found.is_none() && covers(pick) {
            found = Some(pick.to_vec());
        }
        found.is_some()
    });
    Ok(found)
}

/// Calls `f` on every subset of `0..n` of size 0, 1, .., up to `max_size`,
/// in increasing size then lexicographic order, stopping early once `f`
/// returns true.
fn for_each_combination(n: usize, max_size: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let mut buf: Vec<usize> = Vec::new();
    for size in 0..=max_size {
        if size > n {
            break;
        }
        buf.clear();
        buf.extend(0..size);
        loop {
            if f(&buf) {
                return;
            }
            // next combination
            let mut i = size;
            let mut advanced = false;
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
        if size == 0 && n == 0 {
            break;
        }
    }
}

/// Parses a Dominating Set input: an undirected edge-list block followed by
/// a single `k <int>` line.
pub fn parse_dominating_set(text: &str) -> Result<DominatingSetInstance> {
    let (graph, rest) = parse_graph_block(text)?;
    let mut k: Option<usize> = None;
    for (line, content) in &rest {
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("k") => {
                if k.is_some() {
                    return Err(Error::Parse {
                        line: *line,
                        msg: "duplicate `k` line".into(),
                    });
                }
                let value = tokens.next().unwrap_or("");
                k = Some(value.parse().map_err(|_| Error::Parse {
                    line: *line,
                    msg: format!("bad k `{value}`"),
                })?);
            }
            other => {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!("unknown keyword `{}`", other.unwrap_or("")),
                })
            }
        }
    }
    let k = k.ok_or(Error::Parse {
        line: 0,
        msg: "missing `k` line".into(),
    })?;
    DominatingSetInstance::new(graph, k)
}

/// Parses a Set Cover input: `universe <n>`, one `set e1 e2 ..` line per
/// set, then `k <int>`. `#` comments allowed.
pub fn parse_set_cover(text: &str) -> Result<SetCoverInstance> {
    let mut universe: Option<usize> = None;
    let mut family: Vec<Vec<usize>> = Vec::new();
    let mut k: Option<usize> = None;
    for (line, content) in meaningful_lines(text) {
        let bad = |msg: String| Error::Parse { line, msg };
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("universe") => {
                if universe.is_some() {
                    return Err(bad("duplicate `universe` line".into()));
                }
                let value = tokens.next().unwrap_or("");
                universe =
                    Some(value.parse().map_err(|_| bad(format!("bad universe size `{value}`")))?);
            }
            Some("set") => {
                let mut set = Vec::new();
                for tok in tokens {
                    set.push(
                        tok.parse()
                            .map_err(|_| bad(format!("bad element `{tok}`")))?,
                    );
                }
                if set.is_empty() {
                    return Err(bad("empty `set` line".into()));
                }
                family.push(set);
            }
            Some("k") => {
                if k.is_some() {
                    return Err(bad("duplicate `k` line".into()));
                }
                let value = tokens.next().unwrap_or("");
                k = Some(value.parse().map_err(|_| bad(format!("bad k `{value}`")))?);
            }
            other => {
                return Err(bad(format!("unknown keyword `{}`", other.unwrap_or(""))));
            }
        }
    }
    let universe = universe.ok_or(Error::Parse {
        line: 0,
        msg: "missing `universe` line".into(),
    })?;
    let k = k.ok_or(Error::Parse {
        line: 0,
        msg: "missing `k` line".into(),
    })?;
    SetCoverInstance::new(universe, family, k)
}
