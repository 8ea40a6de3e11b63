//! Unweighted simple graphs (directed or undirected) with the traversal and
//! structure primitives the solvers need: BFS distances, shortest-path
//! counting, diameter, H-index and the induced-P3 test for cluster graphs.
//!
//! Graphs are immutable after construction; [`Graph::add_edges`] returns a new
//! graph. Vertices are dense indices in `0..n`, neighbor lists are kept sorted
//! and duplicate-free, and self-loops or parallel edges are rejected.

use std::collections::VecDeque;
use std::fmt;

use num::BigUint;

use crate::error::{Error, Result};

/// Dense vertex index, valid only against a specific graph's vertex count.
pub type VertexId = usize;

/// Hop distance between two vertices. `Unreachable` compares greater than
/// every finite value, so `min`/`max` and sorting behave as expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    /// Finite hop count, or `None` if unreachable.
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_unreachable(self) -> bool {
        matches!(self, Distance::Unreachable)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => write!(f, "inf"),
        }
    }
}

/// Unweighted simple graph in adjacency-list form.
///
/// Undirected graphs store each edge in both endpoint lists; directed graphs
/// keep separate out- and in-neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    out: Vec<Vec<VertexId>>,
    inn: Vec<Vec<VertexId>>,
    m: usize,
}

impl Graph {
    /// Builds an undirected graph from an edge list.
    pub fn undirected(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph> {
        let mut g = Graph {
            directed: false,
            out: vec![Vec::new(); n],
            inn: Vec::new(),
            m: 0,
        };
        for &(u, v) in edges {
            g.check_new_edge(u, v)?;
            g.out[u].push(v);
            g.out[v].push(u);
            g.m += 1;
        }
        for list in &mut g.out {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Builds a directed graph from an arc list `(from, to)`.
    pub fn directed(n: usize, arcs: &[(VertexId, VertexId)]) -> Result<Graph> {
        let mut g = Graph {
            directed: true,
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            m: 0,
        };
        for &(u, v) in arcs {
            g.check_new_edge(u, v)?;
            g.out[u].push(v);
            g.inn[v].push(u);
            g.m += 1;
        }
        for list in g.out.iter_mut().chain(g.inn.iter_mut()) {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn check_new_edge(&self, u: VertexId, v: VertexId) -> Result<()> {
        let n = self.n();
        if u >= n {
            return Err(Error::VertexOutOfRange { vertex: u, n });
        }
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.out[u].contains(&v) {
            return Err(Error::DuplicateEdge { u, v });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// Number of edges (undirected) or arcs (directed).
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Out-neighbors for directed graphs, plain neighbors otherwise.
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v]
    }

    /// In-neighbors for directed graphs, plain neighbors otherwise.
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        if self.directed {
            &self.inn[v]
        } else {
            &self.out[v]
        }
    }

    /// Neighbors of `v` in an undirected graph (alias of `out_neighbors`).
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v]
    }

    /// Degree of `v`; for directed graphs this is the total (in + out) degree.
    pub fn degree(&self, v: VertexId) -> usize {
        if self.directed {
            self.out[v].len() + self.inn[v].len()
        } else {
            self.out[v].len()
        }
    }

    /// True if the edge `{u, v}` (or the arc `(u, v)`) is present.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && self.out[u].binary_search(&v).is_ok()
    }

    /// Canonical form of a pair: sorted for undirected graphs, kept as
    /// `(from, to)` for directed ones.
    pub fn normalize_pair(&self, u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        if !self.directed && u > v {
            (v, u)
        } else {
            (u, v)
        }
    }

    /// All edges/arcs in canonical sorted order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.out[u] {
                if self.directed || u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Returns a new graph with the given absent pairs added. The input graph
    /// is unmodified. Fails if a pair is already present, is a self-loop, is
    /// out of range, or appears twice in `additions`.
    pub fn add_edges(&self, additions: &[(VertexId, VertexId)]) -> Result<Graph> {
        let mut g = self.clone();
        if g.inn.is_empty() && !g.directed {
            // undirected graphs never use `inn`
        }
        let mut seen: Vec<(VertexId, VertexId)> = Vec::with_capacity(additions.len());
        for &(u, v) in additions {
            let key = self.normalize_pair(u, v);
            g.check_new_edge(u, v)?;
            if g.has_edge(u, v) {
                return Err(Error::EdgeExists { u, v });
            }
            if seen.contains(&key) {
                return Err(Error::DuplicateEdge { u, v });
            }
            seen.push(key);
            insert_sorted(&mut g.out[u], v);
            if g.directed {
                insert_sorted(&mut g.inn[v], u);
            } else {
                insert_sorted(&mut g.out[v], u);
            }
            g.m += 1;
        }
        Ok(g)
    }

    /// BFS hop distances from `source`, following arc direction in directed
    /// graphs. `result[source] = 0`; unreachable vertices get `Unreachable`.
    pub fn bfs_distances(&self, source: VertexId) -> Result<Vec<Distance>> {
        self.bfs_impl(source, false)
    }

    /// Like [`Graph::bfs_distances`] but following arcs backwards, i.e. the
    /// distance *to* `source` from every vertex. Identical to forward BFS on
    /// undirected graphs.
    pub fn bfs_distances_reverse(&self, source: VertexId) -> Result<Vec<Distance>> {
        self.bfs_impl(source, true)
    }

    fn bfs_impl(&self, source: VertexId, reverse: bool) -> Result<Vec<Distance>> {
        let n = self.n();
        if source >= n {
            return Err(Error::VertexOutOfRange { vertex: source, n });
        }
        let mut dist = vec![Distance::Unreachable; n];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].finite().expect("queued vertices are reached");
            let next = if reverse {
                self.in_neighbors(u)
            } else {
                self.out_neighbors(u)
            };
            for &v in next {
                if dist[v].is_unreachable() {
                    dist[v] = Distance::Finite(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// BFS distances plus the number of distinct shortest paths from `source`
    /// to every vertex, accumulated layer by layer. Counts are exact
    /// arbitrary-precision integers; `counts[v] = 0` iff `v` is unreachable.
    pub fn shortest_path_counts(&self, source: VertexId) -> Result<(Vec<Distance>, Vec<BigUint>)> {
        let n = self.n();
        if source >= n {
            return Err(Error::VertexOutOfRange { vertex: source, n });
        }
        let mut dist = vec![Distance::Unreachable; n];
        let mut counts = vec![BigUint::from(0u32); n];
        dist[source] = Distance::Finite(0);
        counts[source] = BigUint::from(1u32);
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].finite().expect("queued vertices are reached");
            for &v in self.out_neighbors(u) {
                match dist[v] {
                    Distance::Unreachable => {
                        dist[v] = Distance::Finite(du + 1);
                        counts[v] = counts[u].clone();
                        queue.push_back(v);
                    }
                    Distance::Finite(dv) if dv == du + 1 => {
                        let add = counts[u].clone();
                        counts[v] += add;
                    }
                    Distance::Finite(_) => {}
                }
            }
        }
        Ok((dist, counts))
    }

    /// Maximum distance over all ordered vertex pairs; `Unreachable` iff the
    /// graph is disconnected (directed: not strongly connected).
    pub fn diameter(&self) -> Distance {
        let n = self.n();
        let mut best = Distance::Finite(0);
        for u in 0..n {
            let dist = self.bfs_distances(u).expect("u < n");
            for (v, d) in dist.iter().enumerate() {
                if v != u {
                    best = best.max(*d);
                }
            }
            if best.is_unreachable() {
                return Distance::Unreachable;
            }
        }
        best
    }

    /// Largest `h` such that at least `h` vertices have degree at least `h`
    /// (total degree in directed graphs). 0 for edgeless graphs.
    pub fn h_index(&self) -> usize {
        let mut degrees: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let mut h = 0;
        for (i, &d) in degrees.iter().enumerate() {
            if d >= i + 1 {
                h = i + 1;
            } else {
                break;
            }
        }
        h
    }

    /// Finds an induced path on three vertices `(a, b, c)` with `ab, bc` edges
    /// and `ac` absent, scanning centers in ascending order. Returns `None`
    /// iff the graph is a cluster graph. Undirected graphs only.
    pub fn induced_p3(&self) -> Result<Option<[VertexId; 3]>> {
        if self.directed {
            return Err(Error::RequiresUndirected);
        }
        Ok(induced_p3_masked(self, &vec![true; self.n()]))
    }

    /// True iff every connected component is a clique. Undirected only.
    pub fn is_cluster_graph(&self) -> Result<bool> {
        Ok(self.induced_p3()?.is_none())
    }

    /// True iff the graph has no cycle: no directed cycle for digraphs, a
    /// forest for undirected graphs.
    pub fn is_acyclic(&self) -> bool {
        if self.directed {
            // Kahn's algorithm.
            let n = self.n();
            let mut indeg: Vec<usize> = (0..n).map(|v| self.inn[v].len()).collect();
            let mut queue: VecDeque<usize> =
                (0..n).filter(|&v| indeg[v] == 0).collect();
            let mut removed = 0;
            while let Some(u) = queue.pop_front() {
                removed += 1;
                for &v in &self.out[u] {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        queue.push_back(v);
                    }
                }
            }
            removed == n
        } else {
            // A forest has fewer edges than vertices in every component; a
            // single global check per component via union-find is overkill
            // at our sizes, so just DFS.
            let n = self.n();
            let mut seen = vec![false; n];
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut stack = vec![(start, usize::MAX)];
                seen[start] = true;
                while let Some((u, parent)) = stack.pop() {
                    let mut skipped_parent = false;
                    for &v in &self.out[u] {
                        if v == parent && !skipped_parent {
                            skipped_parent = true;
                            continue;
                        }
                        if seen[v] {
                            return false;
                        }
                        seen[v] = true;
                        stack.push((v, u));
                    }
                }
            }
            true
        }
    }

    /// Serializes to the edge-list text format parsed by
    /// [`parse_edge_list`]: a `directed|undirected <n>` header followed by
    /// one `u v` pair per line in canonical order.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        s.push_str(if self.directed { "directed" } else { "undirected" });
        s.push_str(&format!(" {}\n", self.n()));
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

fn insert_sorted(list: &mut Vec<VertexId>, v: VertexId) {
    let pos = list.binary_search(&v).unwrap_err();
    list.insert(pos, v);
}

/// Induced-P3 search restricted to vertices with `alive[v]`. Centers are
/// scanned ascending, then neighbor pairs lexicographically, so the witness
/// is canonical for a given mask.
pub(crate) fn induced_p3_masked(g: &Graph, alive: &[bool]) -> Option<[VertexId; 3]> {
    for b in 0..g.n() {
        if !alive[b] {
            continue;
        }
        let nb: Vec<VertexId> = g
            .neighbors(b)
            .iter()
            .copied()
            .filter(|&v| alive[v])
            .collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                let (a, c) = (nb[i], nb[j]);
                if !g.has_edge(a, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Iterates meaningful lines of a text input: strips `#` comments, skips
/// blanks, yields `(1-based line number, trimmed content)`.
pub(crate) fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Parses the graph header and edge lines shared by the plain edge-list
/// format and instance files. Returns the graph plus any trailing
/// non-edge lines (keyword lines of an instance file).
pub(crate) fn parse_graph_block(text: &str) -> Result<(Graph, Vec<(usize, String)>)> {
    let mut lines = meaningful_lines(text);
    let (lineno, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty input; expected `directed|undirected <n>` header".into(),
    })?;
    let mut parts = header.split_whitespace();
    let directed = match parts.next() {
        Some("directed") => true,
        Some("undirected") => false,
        other => {
            return Err(Error::Parse {
                line: lineno,
                msg: format!(
                    "expected `directed` or `undirected`, got `{}`",
                    other.unwrap_or("")
                ),
            })
        }
    };
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(Error::Parse {
            line: lineno,
            msg: "expected a vertex count after the direction keyword".into(),
        })?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            msg: "trailing tokens after header".into(),
        });
    }

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut rest: Vec<(usize, String)> = Vec::new();
    let mut in_edges = true;
    for (lineno, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let as_edge = if tokens.len() == 2 {
            match (tokens[0].parse::<usize>(), tokens[1].parse::<usize>()) {
                (Ok(u), Ok(v)) => Some((u, v)),
                _ => None,
            }
        } else {
            None
        };
        match as_edge {
            Some(pair) if in_edges => edges.push(pair),
            Some(_) => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "edge line after keyword lines".into(),
                })
            }
            None => {
                in_edges = false;
                rest.push((lineno, line.to_string()));
            }
        }
    }

    let graph = if directed {
        Graph::directed(n, &edges)?
    } else {
        Graph::undirected(n, &edges)?
    };
    Ok((graph, rest))
}

/// Parses the plain edge-list text format: `directed|undirected <n>` header,
/// one `u v` pair per line, `#` comments allowed. Rejects self-loops,
/// duplicates and anything that is not an edge line.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let (graph, rest) = parse_graph_block(text)?;
    if let Some((line, content)) = rest.first() {
        return Err(Error::Parse {
            line: *line,
            msg: format!("unexpected non-edge line `{content}`"),
        });
    }
    Ok(graph)
}

/// The six-vertex graph used by several unit tests: edges
/// `u1u3, u2u4, u2u5, u2u6, u3u4` with vertices `u1..u6` mapped to `0..6`.
#[cfg(test)]
pub(crate) fn six_vertex_example() -> Graph {
    Graph::undirected(6, &[(0, 2), (1, 3), (1, 4), (1, 5), (2, 3)]).unwrap()
}
