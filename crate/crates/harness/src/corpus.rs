//! Graph corpora for campaigns and searches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use metric_gap_core::families::{complete_bipartite, FamilyError};
use metric_gap_core::{to_graph6, Family, Graph};

/// Largest order accepted by exhaustive enumeration (2^15 edge masks).
pub const MAX_EXHAUSTIVE_ORDER: usize = 6;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CorpusError {
    #[error("exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_ORDER}, got {0}")]
    TooLarge(usize),
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// A graph with a stable identifier (graph6 where it fits, else JSON).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub id: String,
    pub graph: Graph,
}

impl NamedGraph {
    pub fn new(id: impl Into<String>, graph: Graph) -> Self {
        NamedGraph {
            id: id.into(),
            graph,
        }
    }

    pub fn keyed(graph: Graph) -> Self {
        NamedGraph {
            id: graph_key(&graph),
            graph,
        }
    }
}

/// graph6, or the JSON edge list beyond the graph6 short form.
pub fn graph_key(g: &Graph) -> String {
    to_graph6(g).unwrap_or_else(|_| g.to_json())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CorpusSpec {
    /// Every labeled graph with `2 <= n <= n_max` vertices.
    Exhaustive { n_max: usize, connected_only: bool },
    /// Named constructions; `worked` (alias `paper`) expands to the worked-example set.
    Families { names: Vec<String> },
    /// `count` samples of `G(n, edge_prob)`.
    Random {
        n: usize,
        count: usize,
        edge_prob: f64,
        seed: u64,
    },
}

impl CorpusSpec {
    pub fn graphs(&self) -> Result<Vec<NamedGraph>, CorpusError> {
        match self {
            CorpusSpec::Exhaustive {
                n_max,
                connected_only,
            } => {
                if *n_max > MAX_EXHAUSTIVE_ORDER {
                    return Err(CorpusError::TooLarge(*n_max));
                }
                Ok((2..=*n_max)
                    .flat_map(|n| labeled_graphs(n, *connected_only))
                    .map(NamedGraph::keyed)
                    .collect())
            }
            CorpusSpec::Families { names } => {
                let mut out = Vec::new();
                for name in names {
                    if name == "worked" || name == "paper" {
                        out.extend(worked_families());
                    } else {
                        let family: Family = name.parse()?;
                        out.push(NamedGraph::new(family.to_string(), family.generate()?));
                    }
                }
                Ok(out)
            }
            CorpusSpec::Random {
                n,
                count,
                edge_prob,
                seed,
            } => {
                if !(0.0..=1.0).contains(edge_prob) {
                    return Err(CorpusError::Probability(*edge_prob));
                }
                Ok(random_graphs(*n, *count, *edge_prob, *seed)
                    .into_iter()
                    .map(NamedGraph::keyed)
                    .collect())
            }
        }
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// All `2^C(n,2)` labeled graphs on `n` vertices in edge-mask order.
pub fn labeled_graphs(n: usize, connected_only: bool) -> Vec<Graph> {
    let pairs = all_pairs(n);
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = (0..pairs.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| pairs[b]);
            Graph::new(n, edges).expect("distinct pairs")
        })
        .filter(|g| !connected_only || g.is_connected())
        .collect()
}

pub fn random_graphs(n: usize, count: usize, p: f64, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = all_pairs(n);
    (0..count)
        .map(|_| {
            let edges: Vec<_> = pairs.iter().copied().filter(|_| rng.gen_bool(p)).collect();
            Graph::new(n, edges).expect("distinct pairs")
        })
        .collect()
}

/// `K_{3,3}` with the same-side edge `{0, 1}`.
pub fn k33_plus_edge() -> Graph {
    complete_bipartite(3, 3)
        .add_edge(0, 1)
        .expect("same-side pair is a non-edge")
}

/// Constructions behind the worked examples that fit an exhaustive search.
pub fn worked_families() -> Vec<NamedGraph> {
    let mut out: Vec<NamedGraph> = [
        Family::Path(3),
        Family::CompleteMinusEdge(3),
        Family::Complete(5),
        Family::CompleteMinusEdge(5),
        Family::CompleteBipartite(3, 3),
        Family::CompleteBipartite(4, 4),
        Family::CompleteMultipartite(2, 3),
        Family::Cycle(6),
        Family::Dumbbell(6),
        Family::Dumbbell(8),
        Family::RegularizedDumbbell(8),
        Family::BipartitePlusMatching(4),
    ]
    .into_iter()
    .map(|f| NamedGraph::new(f.to_string(), f.generate().expect("valid parameters")))
    .collect();
    out.push(NamedGraph::new(
        "complete_bipartite:3:3+0-1",
        k33_plus_edge(),
    ));
    out
}
