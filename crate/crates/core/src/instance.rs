//! The shared problem encoding for all four improvement variants, the
//! instance file format, and the solution verifier that every solver's
//! output is checked against.

use crate::centrality::{
    betweenness, closeness, format_rational, parse_rational, CentralityKind, Rational,
};
use crate::error::{Error, Result};
use crate::graph::{parse_graph_block, Graph, VertexId};

/// Problem variant: which centrality, and whether the graph is directed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProblemKind {
    pub centrality: CentralityKind,
    pub directed: bool,
}

impl ProblemKind {
    pub const CLOSENESS: ProblemKind = ProblemKind {
        centrality: CentralityKind::Closeness,
        directed: false,
    };
    pub const BETWEENNESS: ProblemKind = ProblemKind {
        centrality: CentralityKind::Betweenness,
        directed: false,
    };
    pub const DIRECTED_CLOSENESS: ProblemKind = ProblemKind {
        centrality: CentralityKind::Closeness,
        directed: true,
    };
    pub const DIRECTED_BETWEENNESS: ProblemKind = ProblemKind {
        centrality: CentralityKind::Betweenness,
        directed: true,
    };
}

/// One improvement instance: add at most `k` absent edges/arcs to `graph`
/// so that the centrality of `z` reaches `r`.
///
/// `k` may exceed the number of absent pairs; solvers then simply use fewer
/// additions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovementInstance {
    pub graph: Graph,
    pub z: VertexId,
    pub k: usize,
    pub r: Rational,
    pub kind: ProblemKind,
}

impl ImprovementInstance {
    pub fn new(
        graph: Graph,
        z: VertexId,
        k: usize,
        r: Rational,
        kind: ProblemKind,
    ) -> Result<ImprovementInstance> {
        if z >= graph.n() {
            return Err(Error::VertexOutOfRange {
                vertex: z,
                n: graph.n(),
            });
        }
        if kind.directed != graph.is_directed() {
            return Err(Error::KindMismatch(format!(
                "kind says directed={}, graph says directed={}",
                kind.directed,
                graph.is_directed()
            )));
        }
        Ok(ImprovementInstance { graph, z, k, r, kind })
    }

    /// Centrality of `z` in `graph + additions`, recomputed from scratch.
    /// Validates the additions (absent, in range, no self-loops, distinct)
    /// but not the budget; directed closeness uses distances from `z`.
    pub fn evaluate(&self, additions: &[(VertexId, VertexId)]) -> Result<Rational> {
        let g = self.graph.add_edges(additions)?;
        match self.kind.centrality {
            CentralityKind::Closeness => closeness(&g, self.z),
            CentralityKind::Betweenness => betweenness(&g, self.z),
        }
    }

    /// Serializes to the instance text format: the graph edge-list block
    /// followed by `z`, `k`, `r` and `kind` lines.
    pub fn to_text(&self) -> String {
        let mut s = self.graph.to_edge_list();
        s.push_str(&format!("z {}\n", self.z));
        s.push_str(&format!("k {}\n", self.k));
        s.push_str(&format!("r {}\n", format_rational(&self.r)));
        s.push_str(&format!("kind {}\n", self.kind.centrality.as_str()));
        s
    }

    /// Parses the instance text format written by [`ImprovementInstance::to_text`].
    pub fn parse(text: &str) -> Result<ImprovementInstance> {
        let (graph, rest) = parse_graph_block(text)?;
        let mut z: Option<VertexId> = None;
        let mut k: Option<usize> = None;
        let mut r: Option<Rational> = None;
        let mut kind: Option<CentralityKind> = None;
        for (line, content) in &rest {
            let bad = |msg: String| Error::Parse { line: *line, msg };
            let mut tokens = content.split_whitespace();
            let key = tokens.next().unwrap_or("");
            let value = tokens.collect::<Vec<_>>().join(" ");
            let dup = |name: &str| bad(format!("duplicate `{name}` line"));
            match key {
                "z" => {
                    if z.is_some() {
                        return Err(dup("z"));
                    }
                    z = Some(value.parse().map_err(|_| bad(format!("bad z `{value}`")))?);
                }
                "k" => {
                    if k.is_some() {
                        return Err(dup("k"));
                    }
                    k = Some(value.parse().map_err(|_| bad(format!("bad k `{value}`")))?);
                }
                "r" => {
                    if r.is_some() {
                        return Err(dup("r"));
                    }
                    r = Some(parse_rational(&value)?);
                }
                "kind" => {
                    if kind.is_some() {
                        return Err(dup("kind"));
                    }
                    kind = Some(match value.as_str() {
                        "closeness" => CentralityKind::Closeness,
                        "betweenness" => CentralityKind::Betweenness,
                        other => {
                            return Err(bad(format!(
                                "kind must be closeness or betweenness, got `{other}`"
                            )))
                        }
                    });
                }
                other => return Err(bad(format!("unknown keyword `{other}`"))),
            }
        }
        let missing = |name: &str| Error::Parse {
            line: 0,
            msg: format!("missing `{name}` line"),
        };
        let directed = graph.is_directed();
        ImprovementInstance::new(
            graph,
            z.ok_or_else(|| missing("z"))?,
            k.ok_or_else(|| missing("k"))?,
            r.ok_or_else(|| missing("r"))?,
            ProblemKind {
                centrality: kind.ok_or_else(|| missing("kind"))?,
                directed,
            },
        )
    }
}

/// A candidate or final answer: an addition set together with the
/// centrality it achieves. Solvers keep `additions` sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub additions: Vec<(VertexId, VertexId)>,
    pub achieved: Rational,
}

/// Re-checks a proposed addition set against an instance from scratch,
/// never trusting solver-reported values. Returns the decision
/// (`achieved >= r`) and the recomputed centrality.
///
/// Fails with the offending pair if the additions overlap existing edges,
/// contain self-loops or duplicates, or exceed the budget.
pub fn verify(
    inst: &ImprovementInstance,
    additions: &[(VertexId, VertexId)],
) -> Result<(bool, Rational)> {
    if additions.len() > inst.k {
        return Err(Error::BudgetExceeded {
            got: additions.len(),
            budget: inst.k,
        });
    }
    let achieved = inst.evaluate(additions)?;
    Ok((achieved >= inst.r, achieved))
}
