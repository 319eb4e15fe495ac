//! Searches for non-monotone behaviour of `lambda` under graph operations.

use std::io;

use serde::Serialize;

use metric_gap_core::bounds::GapSource;
use metric_gap_core::families::{complete, complete_bipartite};
use metric_gap_core::{GapError, Graph, Rational};

use crate::corpus::{graph_key, NamedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Change {
    Increase,
    Decrease,
}

/// `lambda(after, H)` differs strictly from `lambda(before, H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphWitness {
    pub change: Change,
    pub operation: String,
    pub before_graph: String,
    pub after_graph: String,
    pub h: String,
    pub before: Rational,
    pub after: Rational,
    /// `after / before`
    pub ratio: Rational,
}

/// `small`, `middle`, `large` are nested metric graphs (up to relabeling)
/// whose gaps do not move monotonically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricWitness {
    pub g: String,
    pub small: String,
    pub middle: String,
    pub large: String,
    pub lambda_small: Rational,
    pub lambda_middle: Rational,
    pub lambda_large: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub graph_witnesses: Vec<GraphWitness>,
    pub metric_witnesses: Vec<MetricWitness>,
}

impl SearchReport {
    pub fn extend(&mut self, other: SearchReport) {
        self.graph_witnesses.extend(other.graph_witnesses);
        self.metric_witnesses.extend(other.metric_witnesses);
    }

    pub fn has(&self, change: Change) -> bool {
        self.graph_witnesses.iter().any(|w| w.change == change)
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "kind",
            "operation",
            "before_graph",
            "after_graph",
            "h",
            "before",
            "after",
            "ratio",
        ])?;
        for x in &self.graph_witnesses {
            let change = match x.change {
                Change::Increase => "increase",
                Change::Decrease => "decrease",
            };
            w.write_record([
                change,
                &x.operation,
                &x.before_graph,
                &x.after_graph,
                &x.h,
                &x.before.to_string(),
                &x.after.to_string(),
                &x.ratio.to_string(),
            ])?;
        }
        for x in &self.metric_witnesses {
            let chain = format!("{} < {} < {}", x.small, x.middle, x.large);
            let values = format!(
                "{} / {} / {}",
                x.lambda_small, x.lambda_middle, x.lambda_large
            );
            w.write_record([
                "metric",
                "subgraph chain",
                &x.g,
                "",
                &chain,
                &values,
                "",
                "",
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn compare(
    src: &dyn GapSource,
    operation: String,
    before: &Graph,
    after: &Graph,
    h: &NamedGraph,
) -> Result<Option<GraphWitness>, GapError> {
    let a = src.gap(before, &h.graph)?;
    let b = src.gap(after, &h.graph)?;
    let change = match b.cmp(&a) {
        std::cmp::Ordering::Greater => Change::Increase,
        std::cmp::Ordering::Less => Change::Decrease,
        std::cmp::Ordering::Equal => return Ok(None),
    };
    Ok(Some(GraphWitness {
        change,
        operation,
        before_graph: graph_key(before),
        after_graph: graph_key(after),
        h: h.id.clone(),
        ratio: &b / &a,
        before: a,
        after: b,
    }))
}

/// Every `(G, G + e)` over the non-edges of each corpus graph.
pub fn edge_addition_witnesses(
    corpus: &[NamedGraph],
    h: &NamedGraph,
    src: &dyn GapSource,
) -> Result<SearchReport, GapError> {
    let mut report = SearchReport::default();
    for g in corpus.iter().filter(|g| g.graph.is_connected()) {
        for (u, v) in g.graph.non_edges() {
            let plus = g.graph.add_edge(u, v).expect("non-edge");
            if let Some(w) = compare(src, format!("add edge {u}-{v}"), &g.graph, &plus, h)? {
                report.graph_witnesses.push(w);
            }
        }
    }
    Ok(report)
}

/// Adds `edges` one at a time starting from `start`, comparing neighbours.
pub fn chain_witnesses(
    start: &Graph,
    edges: &[(usize, usize)],
    h: &NamedGraph,
    src: &dyn GapSource,
) -> Result<SearchReport, GapError> {
    let mut report = SearchReport::default();
    let mut current = start.clone();
    for &(u, v) in edges {
        let next = current.add_edge(u, v).expect("chain edges are non-edges");
        if let Some(w) = compare(src, format!("add edge {u}-{v}"), &current, &next, h)? {
            report.graph_witnesses.push(w);
        }
        current = next;
    }
    Ok(report)
}

/// `(G, G + apex)` where the new vertex is adjacent to every old one.
pub fn apex_witnesses(
    corpus: &[NamedGraph],
    h: &NamedGraph,
    src: &dyn GapSource,
) -> Result<SearchReport, GapError> {
    let mut report = SearchReport::default();
    for g in corpus.iter().filter(|g| g.graph.is_connected()) {
        let apex = g.graph.with_apex();
        if let Some(w) = compare(src, "add apex".to_string(), &g.graph, &apex, h)? {
            report.graph_witnesses.push(w);
        }
    }
    Ok(report)
}

/// Nested triples `small < middle < large` from `hs` where `lambda(G, .)`
/// is not monotone along the chain.
pub fn metric_triples(
    g: &NamedGraph,
    hs: &[NamedGraph],
    src: &dyn GapSource,
) -> Result<SearchReport, GapError> {
    let values: Vec<Rational> = hs
        .iter()
        .map(|h| src.gap(&g.graph, &h.graph))
        .collect::<Result<_, _>>()?;
    let inside = |a: usize, b: usize| {
        a != b
            && hs[a].graph.n() <= hs[b].graph.n()
            && hs[a].graph.subgraph_embedding(&hs[b].graph).is_some()
    };
    let mut report = SearchReport::default();
    for s in 0..hs.len() {
        for m in (0..hs.len()).filter(|&m| inside(s, m)) {
            for l in (0..hs.len()).filter(|&l| inside(m, l)) {
                let down_up = values[m] < values[s] && values[m] < values[l];
                let up_down = values[m] > values[s] && values[m] > values[l];
                if down_up || up_down {
                    report.metric_witnesses.push(MetricWitness {
                        g: g.id.clone(),
                        small: hs[s].id.clone(),
                        middle: hs[m].id.clone(),
                        large: hs[l].id.clone(),
                        lambda_small: values[s].clone(),
                        lambda_middle: values[m].clone(),
                        lambda_large: values[l].clone(),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// The fixed corpora expected to produce witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Documented {
    /// `K_{3,3}` plus each same-side edge, into `K_2`.
    K33SameSide,
    /// `K_{3,3}` grown to `K_6` one same-side edge at a time, into `K_2`.
    K33Chain,
    /// `K_{2,2}` and `K_{2,2}` plus an apex, into `K_2`.
    K22Apex,
    /// `K_2 < K_4 - e < K_4` as metrics for `K_{3,3}`.
    MetricTriple,
}

impl Documented {
    pub const ALL: [Documented; 4] = [
        Documented::K33SameSide,
        Documented::K33Chain,
        Documented::K22Apex,
        Documented::MetricTriple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Documented::K33SameSide => "k33-same-side",
            Documented::K33Chain => "k33-chain",
            Documented::K22Apex => "k22-apex",
            Documented::MetricTriple => "metric-triple",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|d| d.name() == name)
    }

    pub fn run(self, src: &dyn GapSource) -> Result<SearchReport, GapError> {
        let k2 = NamedGraph::new("K2", complete(2));
        let k33 = NamedGraph::new("complete_bipartite:3:3", complete_bipartite(3, 3));
        match self {
            Documented::K33SameSide => edge_addition_witnesses(&[k33], &k2, src),
            Documented::K33Chain => {
                let edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)];
                chain_witnesses(&k33.graph, &edges, &k2, src)
            }
            Documented::K22Apex => {
                let k22 = NamedGraph::new("complete_bipartite:2:2", complete_bipartite(2, 2));
                apex_witnesses(&[k22], &k2, src)
            }
            Documented::MetricTriple => {
                let hs = [
                    k2,
                    NamedGraph::new("K4-e", complete(4).remove_edge(0, 1).expect("edge")),
                    NamedGraph::new("K4", complete(4)),
                ];
                metric_triples(&k33, &hs, src)
            }
        }
    }
}

pub fn documented(src: &dyn GapSource) -> Result<SearchReport, GapError> {
    let mut report = SearchReport::default();
    for d in Documented::ALL {
        report.extend(d.run(src)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::campaign::GapCache;
    use metric_gap_core::GapOptions;

    fn cache() -> GapCache {
        GapCache::new(GapOptions::serial())
    }

    #[test]
    fn same_side_edge_decreases() {
        let r = Documented::K33SameSide.run(&cache()).unwrap();
        assert_eq!(r.graph_witnesses.len(), 6);
        for w in &r.graph_witnesses {
            assert_eq!(w.change, Change::Decrease);
            assert_eq!(w.before, Rational::one());
            assert_eq!(w.after, Rational::new(20, 21));
            assert_eq!(w.ratio, Rational::new(20, 21));
        }
    }

    #[test]
    fn chain_to_k6_has_an_increase() {
        let r = Documented::K33Chain.run(&cache()).unwrap();
        assert!(r.has(Change::Decrease));
        assert!(r.has(Change::Increase));
        let last = r.graph_witnesses.last().unwrap();
        assert_eq!(last.after, Rational::new(6, 5));
    }

    #[test]
    fn apex_increases() {
        let r = Documented::K22Apex.run(&cache()).unwrap();
        assert_eq!(r.graph_witnesses.len(), 1);
        assert_eq!(r.graph_witnesses[0].change, Change::Increase);
        assert_eq!(r.graph_witnesses[0].before, Rational::one());
    }

    #[test]
    fn metric_triple_found() {
        let r = Documented::MetricTriple.run(&cache()).unwrap();
        let w = r
            .metric_witnesses
            .iter()
            .find(|w| {
                (w.small.as_str(), w.middle.as_str(), w.large.as_str()) == ("K2", "K4-e", "K4")
            })
            .expect("triple present");
        assert_eq!(w.lambda_small, Rational::one());
        assert_eq!(w.lambda_large, Rational::one());
        assert!(w.lambda_middle <= Rational::new(14, 15));
    }

    #[test]
    fn names_round_trip() {
        for d in Documented::ALL {
            assert_eq!(Documented::from_name(d.name()), Some(d));
        }
        assert_eq!(Documented::from_name("nope"), None);
    }
}
