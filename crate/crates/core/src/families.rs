//! Named graph constructions with fixed, documented vertex labelings.

use std::fmt;
use std::str::FromStr;

use crate::graph::Graph;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    Unknown(String),
    #[error("family {family} expects {expected} integer parameter(s), got {got:?}")]
    Arity {
        family: &'static str,
        expected: usize,
        got: String,
    },
    #[error("{0}")]
    Construction(String),
}

/// A parameterized graph family.
///
/// Labelings:
/// * `CompleteBipartite(a, b)`: parts `0..a` and `a..a+b`.
/// * `CompleteMultipartite(n, j)`: `j` parts of size `n`, part `p` is
///   `p*n..(p+1)*n`.
/// * `Path(n)`: `0-1-...-(n-1)`; `Cycle(n)` adds `(n-1)-0`.
/// * `CompleteMinusEdge(n)`: `K_n` without `{0, 1}`.
/// * `Dumbbell(n)`: cliques on `0..n/2` and `n/2..n` plus the bridge
///   `{n/2 - 1, n/2}`.
/// * `RegularizedDumbbell(n)`: cliques on the two halves with `{0, 1}` and
///   `{h, h+1}` removed (`h = n/2`) and cross edges `{0, h}`, `{1, h+1}`.
/// * `BipartitePlusMatching(n)`: `K_{n,n}` (left `0..n`, right `n..2n`) plus
///   the edges `{0,1}, {2,3}, ...` inside each side.
/// * `RedCliqueBipartite(n, r)`: `K_{n,n}` plus a clique on the red vertices
///   `0..r` and another on `n..n+r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(usize, usize),
    Path(usize),
    Cycle(usize),
    CompleteMinusEdge(usize),
    Dumbbell(usize),
    RegularizedDumbbell(usize),
    BipartitePlusMatching(usize),
    RedCliqueBipartite(usize, usize),
}

fn clique_edges(vertices: std::ops::Range<usize>) -> impl Iterator<Item = (usize, usize)> {
    let hi = vertices.end;
    vertices.flat_map(move |u| (u + 1..hi).map(move |v| (u, v)))
}

fn bipartite_edges(
    left: std::ops::Range<usize>,
    right: std::ops::Range<usize>,
) -> impl Iterator<Item = (usize, usize)> {
    left.flat_map(move |u| right.clone().map(move |v| (u, v)))
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::new(n, edges).expect("family constructions are simple graphs")
}

fn fail(msg: impl Into<String>) -> FamilyError {
    FamilyError::Construction(msg.into())
}

impl Family {
    pub fn generate(&self) -> Result<Graph, FamilyError> {
        use Family::*;
        Ok(match *self {
            Complete(n) => build(n, clique_edges(0..n)),
            CompleteBipartite(a, b) => build(a + b, bipartite_edges(0..a, a..a + b)),
            CompleteMultipartite(n, j) => {
                let edges = (0..j).flat_map(|p| {
                    (p + 1..j)
                        .flat_map(move |q| bipartite_edges(p * n..(p + 1) * n, q * n..(q + 1) * n))
                });
                build(n * j, edges)
            }
            Path(n) => build(n, (1..n).map(|i| (i - 1, i))),
            Cycle(n) => {
                if n < 3 {
                    return Err(fail(format!("cycle needs n >= 3, got {n}")));
                }
                build(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            CompleteMinusEdge(n) => {
                if n < 2 {
                    return Err(fail(format!("complete_minus_edge needs n >= 2, got {n}")));
                }
                build(n, clique_edges(0..n).filter(|&e| e != (0, 1)))
            }
            Dumbbell(n) => {
                if n < 2 || n % 2 != 0 {
                    return Err(fail(format!("dumbbell needs even n >= 2, got {n}")));
                }
                let h = n / 2;
                build(
                    n,
                    clique_edges(0..h)
                        .chain(clique_edges(h..n))
                        .chain(std::iter::once((h - 1, h))),
                )
            }
            RegularizedDumbbell(n) => {
                if n < 4 || n % 2 != 0 {
                    return Err(fail(format!(
                        "regularized_dumbbell needs even n >= 4, got {n}"
                    )));
                }
                let h = n / 2;
                build(
                    n,
                    clique_edges(0..h)
                        .filter(|&e| e != (0, 1))
                        .chain(clique_edges(h..n).filter(move |&e| e != (h, h + 1)))
                        .chain([(0, h), (1, h + 1)]),
                )
            }
            BipartitePlusMatching(n) => {
                if n < 2 || n % 2 != 0 {
                    return Err(fail(format!(
                        "balanced_bipartite_plus_matching needs even n >= 2, got {n}"
                    )));
                }
                let matching = (0..n)
                    .step_by(2)
                    .flat_map(move |i| [(i, i + 1), (n + i, n + i + 1)]);
                build(2 * n, bipartite_edges(0..n, n..2 * n).chain(matching))
            }
            RedCliqueBipartite(n, r) => {
                if r > n {
                    return Err(fail(format!(
                        "red_clique_bipartite needs r <= n, got r={r} n={n}"
                    )));
                }
                build(
                    2 * n,
                    bipartite_edges(0..n, n..2 * n)
                        .chain(clique_edges(0..r))
                        .chain(clique_edges(n..n + r)),
                )
            }
        })
    }

    pub fn name(&self) -> &'static str {
        use Family::*;
        match self {
            Complete(_) => "complete",
            CompleteBipartite(..) => "complete_bipartite",
            CompleteMultipartite(..) => "complete_multipartite",
            Path(_) => "path",
            Cycle(_) => "cycle",
            CompleteMinusEdge(_) => "complete_minus_edge",
            Dumbbell(_) => "dumbbell",
            RegularizedDumbbell(_) => "regularized_dumbbell",
            BipartitePlusMatching(_) => "balanced_bipartite_plus_matching",
            RedCliqueBipartite(..) => "red_clique_bipartite",
        }
    }
}

/// Red-vertex count `n^(1 - eps/2)`; errors unless it is an integer in `0..=n`.
pub fn red_count_from_epsilon(n: usize, eps: f64) -> Result<usize, FamilyError> {
    let r = (n as f64).powf(1.0 - eps / 2.0);
    let rounded = r.round();
    if !r.is_finite() || (r - rounded).abs() > 1e-9 || rounded < 0.0 || rounded > n as f64 {
        return Err(fail(format!(
            "n^(1-eps/2) = {r} is not an integer in 0..={n} for n={n}, eps={eps}"
        )));
    }
    Ok(rounded as usize)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        match *self {
            Complete(n)
            | Path(n)
            | Cycle(n)
            | CompleteMinusEdge(n)
            | Dumbbell(n)
            | RegularizedDumbbell(n)
            | BipartitePlusMatching(n) => {
                write!(f, "{}:{n}", self.name())
            }
            CompleteBipartite(a, b) | CompleteMultipartite(a, b) | RedCliqueBipartite(a, b) => {
                write!(f, "{}:{a}:{b}", self.name())
            }
        }
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    /// Parses `name:p1[:p2]`, e.g. `complete:5` or `complete_bipartite:3:3`.
    /// `red_clique_eps:n:eps` maps `eps` to an integer red count.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        if name == "red_clique_eps" {
            let arity = || FamilyError::Arity {
                family: "red_clique_eps",
                expected: 2,
                got: rest.join(":"),
            };
            if rest.len() != 2 {
                return Err(arity());
            }
            let n: usize = rest[0].parse().map_err(|_| arity())?;
            let eps: f64 = rest[1].parse().map_err(|_| arity())?;
            return Ok(Family::RedCliqueBipartite(
                n,
                red_count_from_epsilon(n, eps)?,
            ));
        }
        let (family, expected): (&'static str, usize) = match name {
            "complete" => ("complete", 1),
            "complete_bipartite" => ("complete_bipartite", 2),
            "complete_multipartite" => ("complete_multipartite", 2),
            "path" => ("path", 1),
            "cycle" => ("cycle", 1),
            "complete_minus_edge" => ("complete_minus_edge", 1),
            "dumbbell" => ("dumbbell", 1),
            "regularized_dumbbell" => ("regularized_dumbbell", 1),
            "balanced_bipartite_plus_matching" => ("balanced_bipartite_plus_matching", 1),
            "red_clique_bipartite" => ("red_clique_bipartite", 2),
            other => return Err(FamilyError::Unknown(other.to_string())),
        };
        let params: Option<Vec<usize>> = rest.iter().map(|p| p.parse().ok()).collect();
        let params = match params {
            Some(p) if p.len() == expected => p,
            _ => {
                return Err(FamilyError::Arity {
                    family,
                    expected,
                    got: rest.join(":"),
                })
            }
        };
        use Family::*;
        Ok(match family {
            "complete" => Complete(params[0]),
            "complete_bipartite" => CompleteBipartite(params[0], params[1]),
            "complete_multipartite" => CompleteMultipartite(params[0], params[1]),
            "path" => Path(params[0]),
            "cycle" => Cycle(params[0]),
            "complete_minus_edge" => CompleteMinusEdge(params[0]),
            "dumbbell" => Dumbbell(params[0]),
            "regularized_dumbbell" => RegularizedDumbbell(params[0]),
            "balanced_bipartite_plus_matching" => BipartitePlusMatching(params[0]),
            _ => RedCliqueBipartite(params[0], params[1]),
        })
    }
}

/// Convenience constructors used throughout the tests and harness.
pub fn complete(n: usize) -> Graph {
    Family::Complete(n).generate().unwrap()
}

pub fn path(n: usize) -> Graph {
    Family::Path(n).generate().unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Family::CompleteBipartite(a, b).generate().unwrap()
}
