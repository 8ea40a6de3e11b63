//! Exact rational evaluation of harmonic closeness and betweenness
//! centrality for a designated vertex, plus a slow path-enumeration oracle
//! for betweenness used in tests.
//!
//! All values are exact rationals ([`Rational`]); there is no floating point
//! anywhere in the decision logic. Undirected betweenness sums over
//! *unordered* pairs, directed betweenness over *ordered* pairs.

use num::bigint::BigInt;
use num::{BigUint, One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, VertexId};

/// Exact arbitrary-precision rational. Always in lowest terms with a
/// positive denominator (maintained by `num`).
pub type Rational = num::BigRational;

/// Which centrality measure an instance targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CentralityKind {
    Closeness,
    Betweenness,
}

impl CentralityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CentralityKind::Closeness => "closeness",
            CentralityKind::Betweenness => "betweenness",
        }
    }
}

/// Formats a rational as `p/q` with an explicit denominator even for
/// integers (`4/1`), the form used in all file and CLI output.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::Parse {
        line: 0,
        msg: format!("invalid rational `{s}`: {msg}"),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: BigInt = num_str.trim().parse().map_err(|_| bad("bad numerator"))?;
    let denom: BigInt = den_str.trim().parse().map_err(|_| bad("bad denominator"))?;
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

/// Convenience constructor for small rationals.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Harmonic closeness of `z`: the sum of `1/d(z, u)` over all vertices
/// `u != z` with finite distance from `z`. Directed graphs measure
/// distances *from* `z` along arc direction.
pub fn closeness(g: &Graph, z: VertexId) -> Result<Rational> {
    closeness_from_distances(&g.bfs_distances(z)?, z)
}

/// Closeness measured with distances *to* `z` (reverse orientation).
/// Coincides with [`closeness`] on undirected graphs.
pub fn closeness_reverse(g: &Graph, z: VertexId) -> Result<Rational> {
    closeness_from_distances(&g.bfs_distances_reverse(z)?, z)
}

fn closeness_from_distances(dist: &[Distance], z: VertexId) -> Result<Rational> {
    let mut sum = Rational::zero();
    for (u, d) in dist.iter().enumerate() {
        if u == z {
            continue;
        }
        if let Some(d) = d.finite() {
            sum += Rational::new(BigInt::one(), BigInt::from(d));
        }
    }
    Ok(sum)
}

/// Betweenness of `z`: the fraction of shortest `s`-`t` paths through `z`,
/// summed over unordered pairs (undirected) or ordered pairs (directed),
/// with `s, t != z` and `s`-`t` connected.
///
/// Uses the standard pair-splitting identity: the shortest `s`-`t` paths
/// through `z` number `sigma(s,z) * sigma(z,t)` exactly when
/// `d(s,z) + d(z,t) = d(s,t)`, and zero otherwise.
pub fn betweenness(g: &Graph, z: VertexId) -> Result<Rational> {
    let n = g.n();
    if z >= n {
        return Err(Error::VertexOutOfRange { vertex: z, n });
    }
    let (dist_z, counts_z) = g.shortest_path_counts(z)?;
    let mut total = Rational::zero();
    for s in 0..n {
        if s == z {
            continue;
        }
        let (dist_s, counts_s) = g.shortest_path_counts(s)?;
        let d_sz = match dist_s[z] {
            Distance::Finite(d) => d,
            Distance::Unreachable => continue,
        };
        let t_range: Box<dyn Iterator<Item = usize>> = if g.is_directed() {
            Box::new(0..n)
        } else {
            Box::new(s + 1..n)
        };
        for t in t_range {
            if t == z || t == s {
                continue;
            }
            let d_st = match dist_s[t] {
                Distance::Finite(d) => d,
                Distance::Unreachable => continue,
            };
            let d_zt = match dist_z[t] {
                Distance::Finite(d) => d,
                Distance::Unreachable => continue,
            };
            if d_sz + d_zt != d_st {
                continue;
            }
            let through: BigUint = &counts_s[z] * &counts_z[t];
            total += Rational::new(
                BigInt::from(through),
                BigInt::from(counts_s[t].clone()),
            );
        }
    }
    Ok(total)
}

/// Betweenness of `z` computed by explicitly enumerating every shortest
/// path of every pair. Deliberately independent of [`betweenness`] (no
/// shared BFS machinery); intended as a test oracle for small graphs
/// (n of at most about 12).
pub fn betweenness_naive(g: &Graph, z: VertexId) -> Result<Rational> {
    let n = g.n();
    if z >= n {
        return Err(Error::VertexOutOfRange { vertex: z, n });
    }
    let mut total = Rational::zero();
    for s in 0..n {
        if s == z {
            continue;
        }
        let t_range: Box<dyn Iterator<Item = usize>> = if g.is_directed() {
            Box::new(0..n)
        } else {
            Box::new(s + 1..n)
        };
        for t in t_range {
            if t == z || t == s {
                continue;
            }
            if let Some((count, through)) = enumerate_shortest_paths(g, s, t, z) {
                total += Rational::new(BigInt::from(through), BigInt::from(count));
            }
        }
    }
    Ok(total)
}

/// Counts all shortest `s`-`t` paths and how many contain `z`, by
/// iterative-deepening depth-first enumeration of simple paths. Returns
/// `None` when `t` is unreachable from `s`.
fn enumerate_shortest_paths(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    z: VertexId,
) -> Option<(BigUint, BigUint)> {
    let n = g.n();
    for len in 1..n {
        let mut count = BigUint::zero();
        let mut through = BigUint::zero();
        let mut on_path = vec![false; n];
        on_path[s] = true;
        dfs_paths(g, s, t, z, len, &mut on_path, &mut count, &mut through);
        if !count.is_zero() {
            return Some((count, through));
        }
    }
    None
}

fn dfs_paths(
    g: &Graph,
    at: VertexId,
    t: VertexId,
    z: VertexId,
    steps_left: usize,
    on_path: &mut [bool],
    count: &mut BigUint,
    through: &mut BigUint,
) {
    if steps_left == 0 {
        if at == t {
            *count += 1u32;
            if on_path[z] {
                *through += 1u32;
            }
        }
        return;
    }
    for &v in g.out_neighbors(at) {
        if on_path[v] {
            continue;
        }
        on_path[v] = true;
        dfs_paths(g, v, t, z, steps_left - 1, on_path, count, through);
        on_path[v] = false;
    }
}
