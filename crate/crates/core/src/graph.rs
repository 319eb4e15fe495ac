//! Undirected simple graphs and their shortest-path metrics.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0}, {1}}} already present")]
    EdgeExists(usize, usize),
    #[error("edge {{{0}, {1}}} not present")]
    EdgeMissing(usize, usize),
    #[error("invalid JSON edge list: {0}")]
    Json(String),
}

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are kept as sorted `(u, v)` pairs with `u < v`; adjacency lists are
/// derived from them at construction and never mutated afterwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Sum of degrees, `2m`.
    pub fn volume(&self) -> usize {
        2 * self.edges.len()
    }

    /// Maximum degree; 0 for the graph on no vertices.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Minimum degree; 0 for the graph on no vertices.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Number of unordered vertex pairs, `C(n, 2)`.
    pub fn pair_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    /// `m / C(n, 2)`, or `None` when `n < 2`.
    pub fn density(&self) -> Option<Rational> {
        let pairs = self.pair_count();
        (pairs > 0).then(|| Rational::new(self.m() as i64, pairs as i64))
    }

    /// Common degree when every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.pair_count()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Shortest-path diameter, or `None` if the graph is disconnected.
    pub fn diameter(&self) -> Option<u32> {
        let d = apsp(self);
        d.is_connected().then(|| d.diameter())
    }

    /// Vertex pairs `(u, v)`, `u < v`, that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists(u.min(v), u.max(v)));
        }
        let mut edges = self.edges.clone();
        let e = (u.min(v), u.max(v));
        let pos = edges.binary_search(&e).unwrap_err();
        edges.insert(pos, e);
        Ok(Self::from_sorted(self.n, edges))
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let e = (u.min(v), u.max(v));
        match self.edges.binary_search(&e) {
            Ok(pos) => {
                let mut edges = self.edges.clone();
                edges.remove(pos);
                Ok(Self::from_sorted(self.n, edges))
            }
            Err(_) => Err(GraphError::EdgeMissing(e.0, e.1)),
        }
    }

    /// Adds one new vertex `n` adjacent to every existing vertex.
    pub fn with_apex(&self) -> Graph {
        let mut edges = self.edges.clone();
        edges.extend((0..self.n).map(|v| (v, self.n)));
        Self::from_sorted(self.n + 1, edges)
    }

    /// Subgraph induced on `vertices`, relabeled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| {
                let (a, b) = (index[u], index[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Self::from_sorted(vertices.len(), edges)
    }

    /// Vertex-disjoint union; `other` is shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::from_sorted(self.n + other.n, edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Self::from_sorted(self.n, edges)
    }

    /// Whether every edge of `self` is an edge of `other` on the same labels.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges.iter().all(|&(u, v)| other.has_edge(u, v))
    }

    /// Finds an injective vertex map `phi` with every edge of `self` mapped
    /// onto an edge of `host`. Backtracking; fine for desk-scale graphs.
    pub fn subgraph_embedding(&self, host: &Graph) -> Option<Vec<usize>> {
        if self.n > host.n || self.m() > host.m() {
            return None;
        }
        let mut phi = vec![usize::MAX; self.n];
        let mut used = vec![false; host.n];
        fn extend(
            pat: &Graph,
            host: &Graph,
            v: usize,
            phi: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if v == pat.n {
                return true;
            }
            for cand in 0..host.n {
                if used[cand] || host.degree(cand) < pat.degree(v) {
                    continue;
                }
                let ok = pat.adj[v]
                    .iter()
                    .filter(|&&w| w < v)
                    .all(|&w| host.has_edge(phi[w], cand));
                if ok {
                    phi[v] = cand;
                    used[cand] = true;
                    if extend(pat, host, v + 1, phi, used) {
                        return true;
                    }
                    used[cand] = false;
                }
            }
            phi[v] = usize::MAX;
            false
        }
        extend(self, host, 0, &mut phi, &mut used).then_some(phi)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let list: EdgeList =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        list.into_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_edge_list()).expect("edge list serializes")
    }
}

/// JSON interchange form: `{"n": 3, "edges": [[0, 1], [1, 2]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl EdgeList {
    pub fn into_graph(self) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

/// All-pairs hop distances of a graph viewed as a metric space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    k: usize,
    dist: Vec<u32>,
    diameter: u32,
}

impl DistanceMatrix {
    /// Sentinel for pairs in different components.
    pub const INFINITE: u32 = u32::MAX;

    pub fn k(&self) -> usize {
        self.k
    }

    /// Raw entry; [`DistanceMatrix::INFINITE`] for disconnected pairs.
    pub fn raw(&self, i: usize, j: usize) -> u32 {
        self.dist[i * self.k + j]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        let d = self.raw(i, j);
        (d != Self::INFINITE).then_some(d)
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn is_connected(&self) -> bool {
        self.dist.iter().all(|&d| d != Self::INFINITE)
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.dist[i * self.k..(i + 1) * self.k]
    }
}

/// Breadth-first search from every vertex.
pub fn apsp(g: &Graph) -> DistanceMatrix {
    let k = g.n();
    let mut dist = vec![DistanceMatrix::INFINITE; k * k];
    let mut queue = VecDeque::new();
    for s in 0..k {
        let row = &mut dist[s * k..(s + 1) * k];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for &w in g.neighbors(u) {
                if row[w] == DistanceMatrix::INFINITE {
                    row[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let diameter = dist
        .iter()
        .copied()
        .filter(|&d| d != DistanceMatrix::INFINITE)
        .max()
        .unwrap_or(0);
    DistanceMatrix { k, dist, diameter }
}

/// Connected components; see [`Graph::components`].
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    g.components()
}
