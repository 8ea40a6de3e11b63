//! Solvers and instance generators for the problem of raising a designated
//! vertex's centrality to a threshold by adding at most `k` edges or arcs.
//!
//! The library covers four problem variants — harmonic closeness or
//! betweenness, undirected or directed — over one instance encoding, and
//! ships:
//!
//! - exact rational centrality evaluation ([`centrality`]),
//! - an exact solver restricted to additions incident to the target vertex,
//!   an unrestricted brute-force oracle, and a greedy baseline ([`exact`]),
//! - cluster-vertex-deletion and two signature-based solvers parameterized
//!   by the deletion distance to a cluster graph ([`fpt`]),
//! - generators that translate Dominating Set and Set Cover inputs into
//!   improvement instances with closed-form thresholds, together with tiny
//!   brute-force oracles for round-trip validation ([`reductions`]),
//! - seeded random and planted-cluster graph generators ([`gen`]).
//!
//! All centrality values and thresholds are exact rationals; every
//! comparison against a threshold is an exact comparison.

pub mod centrality;
pub mod error;
pub mod exact;
pub mod fpt;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod reductions;

pub use centrality::{
    betweenness, betweenness_naive, closeness, closeness_reverse, format_rational,
    parse_rational, ratio, CentralityKind, Rational,
};
pub use error::{Error, Result};
pub use exact::{greedy, solve_incident, solve_unrestricted, SolverReport};
pub use fpt::{
    cluster_vertex_deletion, decomposition_from_vds, minimum_cluster_deletion_set,
    solve_betweenness_fpt, solve_closeness_fpt, ClusterDecomposition, Signature,
};
pub use graph::{parse_edge_list, Distance, Graph, VertexId};
pub use instance::{verify, ImprovementInstance, ProblemKind, Solution};
