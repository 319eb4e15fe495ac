//! Verification campaigns: every applicable bound over a corpus, with exact
//! gap values shared through a cache.

use std::collections::HashMap;
use std::io;
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use metric_gap_core::bounds::{self, BoundError, BoundReport, Direction, GapSource, Status};
use metric_gap_core::{lambda_exact, Assignment, GapError, GapOptions, Graph, Rational};

use crate::corpus::{graph_key, NamedGraph};

pub const FORMAT_VERSION: u32 = 1;

/// Memoizes `lambda(G, H)` by the graph6 keys of both graphs.
pub struct GapCache {
    opts: GapOptions,
    map: Mutex<HashMap<(String, String), Result<Rational, GapError>>>,
}

impl GapCache {
    pub fn new(opts: GapOptions) -> Self {
        GapCache {
            opts,
            map: Mutex::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl GapSource for GapCache {
    fn gap(&self, g: &Graph, h: &Graph) -> Result<Rational, GapError> {
        let key = (graph_key(g), graph_key(h));
        if let Some(hit) = self.map.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let value = lambda_exact(g, h, &self.opts).map(|r| r.value);
        self.map
            .lock()
            .expect("cache lock")
            .insert(key, value.clone());
        value
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
    Informational,
    Error,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::NotApplicable => "not_applicable",
            Outcome::Informational => "informational",
            Outcome::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub g: String,
    pub h: String,
    pub outcome: Outcome,
    pub direction: Option<Direction>,
    pub bound: Option<Rational>,
    pub subject: Option<Rational>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_us: Option<u64>,
}

impl CheckRecord {
    fn from_report(g: &str, h: &str, report: BoundReport, extra: &str) -> Self {
        let outcome = match report.status {
            Status::NotApplicable => Outcome::NotApplicable,
            Status::Informational => Outcome::Informational,
            Status::Checked if report.holds => Outcome::Pass,
            Status::Checked => Outcome::Fail,
        };
        let detail = match (extra.is_empty(), report.note.is_empty()) {
            (true, _) => report.note,
            (false, true) => extra.to_string(),
            (false, false) => format!("{extra}; {}", report.note),
        };
        CheckRecord {
            check: report.name,
            g: g.to_string(),
            h: h.to_string(),
            outcome,
            direction: (report.status != Status::NotApplicable).then_some(report.direction),
            bound: report.bound_value,
            subject: report.subject_value,
            detail,
            runtime_us: None,
        }
    }

    fn error(check: &str, g: &str, h: &str, err: BoundError, extra: &str) -> Self {
        let detail = if extra.is_empty() {
            err.to_string()
        } else {
            format!("{extra}; {err}")
        };
        CheckRecord {
            check: check.to_string(),
            g: g.to_string(),
            h: h.to_string(),
            outcome: Outcome::Error,
            direction: None,
            bound: None,
            subject: None,
            detail,
            runtime_us: None,
        }
    }

    fn sort_key(&self) -> (&str, &str, &str, &str) {
        (&self.g, &self.h, &self.check, &self.detail)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
    pub informational: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignReport {
    pub format_version: u32,
    pub graphs: usize,
    pub h_list: Vec<String>,
    pub summary: Summary,
    pub records: Vec<CheckRecord>,
}

impl CampaignReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let timing = self.records.iter().any(|r| r.runtime_us.is_some());
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![
            "check",
            "g",
            "h",
            "outcome",
            "direction",
            "bound",
            "subject",
            "detail",
        ];
        if timing {
            header.push("runtime_us");
        }
        w.write_record(&header)?;
        let show = |r: &Option<Rational>| r.as_ref().map(ToString::to_string).unwrap_or_default();
        for r in &self.records {
            let mut row = vec![
                r.check.clone(),
                r.g.clone(),
                r.h.clone(),
                r.outcome.as_str().to_string(),
                r.direction
                    .map(Direction::as_str)
                    .unwrap_or_default()
                    .to_string(),
                show(&r.bound),
                show(&r.subject),
                r.detail.clone(),
            ];
            if timing {
                row.push(r.runtime_us.map(|t| t.to_string()).unwrap_or_default());
            }
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CampaignOptions {
    /// Random nonconstant assignments per `(G, H)` for the denominator bounds.
    pub samples: usize,
    pub seed: u64,
    pub timing: bool,
    /// Largest complete metric in the `K_2, K_3, ...` chain.
    pub chain_top: usize,
    pub gap: GapOptions,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            samples: 8,
            seed: 0,
            timing: false,
            chain_top: 6,
            gap: GapOptions::serial(),
        }
    }
}

struct Sink<'a> {
    g: &'a str,
    timing: bool,
    records: Vec<CheckRecord>,
}

impl Sink<'_> {
    fn one(
        &mut self,
        check: &str,
        h: &str,
        extra: &str,
        f: impl FnOnce() -> Result<BoundReport, BoundError>,
    ) {
        self.many(check, h, extra, || f().map(|r| vec![r]));
    }

    fn many(
        &mut self,
        check: &str,
        h: &str,
        extra: &str,
        f: impl FnOnce() -> Result<Vec<BoundReport>, BoundError>,
    ) {
        let start = Instant::now();
        let result = f();
        let runtime = self.timing.then(|| start.elapsed().as_micros() as u64);
        match result {
            Ok(reports) => self
                .records
                .extend(reports.into_iter().map(|r| CheckRecord {
                    runtime_us: runtime,
                    ..CheckRecord::from_report(self.g, h, r, extra)
                })),
            Err(e) => self.records.push(CheckRecord {
                runtime_us: runtime,
                ..CheckRecord::error(check, self.g, h, e, extra)
            }),
        }
    }
}

fn metric_ok(h: &Graph) -> bool {
    h.n() >= 2 && h.is_connected()
}

/// Largest `top <= cap` with `top^n` within budget.
fn chain_top(n: usize, cap: usize, budget: u64) -> usize {
    let mut top = 2;
    while top < cap && (top as u128 + 1).pow(n as u32) <= u128::from(budget) {
        top += 1;
    }
    top
}

fn random_assignment(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Assignment {
    loop {
        let image: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        let f = Assignment::new(image);
        if !f.is_constant() {
            return f;
        }
    }
}

fn checks_for_graph(
    gi: usize,
    g: &NamedGraph,
    hs: &[NamedGraph],
    src: &GapCache,
    opts: &CampaignOptions,
) -> Vec<CheckRecord> {
    let mut sink = Sink {
        g: &g.id,
        timing: opts.timing,
        records: Vec::new(),
    };
    let graph = &g.graph;
    for h in hs {
        if !metric_ok(&h.graph) {
            sink.records.push(CheckRecord::error(
                "metric",
                &g.id,
                &h.id,
                BoundError::Disconnected("H"),
                "",
            ));
            continue;
        }
        sink.one("positive_iff_connected", &h.id, "", || {
            bounds::positivity_iff_connected(graph, &h.graph, src)
        });
    }
    if !graph.is_connected() || graph.n() < 2 {
        return sink.records;
    }

    for (hi, h) in hs.iter().enumerate().filter(|(_, h)| metric_ok(&h.graph)) {
        let hg = &h.graph;
        sink.one("complete_upper", &h.id, "", || {
            bounds::complete_upper(graph, hg, src)
        });
        sink.one("equality_iff_complete", &h.id, "", || {
            bounds::equality_iff_complete(graph, hg, src)
        });
        sink.one("sg_lower", &h.id, "", || {
            bounds::lower_bound_sg(graph, hg, src)
        });
        sink.one("naive_lower", &h.id, "", || {
            bounds::naive_lower(graph, hg, src)
        });
        sink.one("naive_lower_regular", &h.id, "", || {
            if graph.regular_degree().is_none() {
                return Ok(BoundReport::not_applicable(
                    "naive_lower_regular",
                    Direction::AtLeast,
                    "G is not regular",
                ));
            }
            bounds::naive_lower_regular(graph, hg, src)
        });
        sink.one("k2_extremality", &h.id, "", || {
            bounds::k2_extremality(graph, hg, src)
        });

        for sub in hs.iter().filter(|s| s.id != h.id && metric_ok(&s.graph)) {
            if sub.graph.n() <= hg.n() && sub.graph.subgraph_embedding(hg).is_some() {
                let pair = format!("{}>{}", h.id, sub.id);
                sink.one("subgraph", &pair, "", || {
                    bounds::subgraph_bound(graph, hg, &sub.graph, src)
                });
            }
        }
        for h2 in hs
            .iter()
            .filter(|h2| h2.id != h.id && h2.graph.n() == hg.n() && metric_ok(&h2.graph))
        {
            let pair = format!("{}->{}", h.id, h2.id);
            sink.many("h_perturbation", &pair, "", || {
                bounds::h_perturbation_ratio_bounds(graph, hg, &h2.graph, src)
            });
        }

        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(((gi as u64) << 16) | hi as u64);
        for _ in 0..opts.samples {
            let f = random_assignment(&mut rng, graph.n(), hg.n());
            let extra = format!("f={:?}", f.image());
            sink.many("denominator", &h.id, &extra, || {
                bounds::denominator_bounds(graph, hg, &f).map(|(lo, hi)| vec![lo, hi])
            });
        }

        for (u, v) in graph.non_edges() {
            let plus = graph.add_edge(u, v).expect("non-edge");
            let extra = format!("+{u}-{v}");
            sink.many("edge_addition", &h.id, &extra, || {
                bounds::edge_addition_bounds(graph, &plus, hg, src).map(|(a, b)| vec![a, b])
            });
        }
    }

    let top = chain_top(graph.n(), opts.chain_top, opts.gap.budget);
    sink.many("complete_chain", &format!("K2..K{top}"), "", || {
        bounds::complete_chain(graph, top, src)
    });
    sink.records
}

fn regular_pairs(
    corpus: &[NamedGraph],
    hs: &[NamedGraph],
    src: &GapCache,
    timing: bool,
) -> Vec<CheckRecord> {
    let regular: Vec<_> = corpus
        .iter()
        .filter(|g| g.graph.is_connected() && g.graph.regular_degree().is_some())
        .collect();
    let mut out = Vec::new();
    for g in &regular {
        let d = g.graph.regular_degree().expect("filtered");
        for gp in &regular {
            let is_super = gp.graph.n() == g.graph.n()
                && gp.graph.regular_degree() == Some(d + 1)
                && g.graph.is_spanning_subgraph_of(&gp.graph);
            if !is_super {
                continue;
            }
            let mut sink = Sink {
                g: &g.id,
                timing,
                records: Vec::new(),
            };
            for h in hs.iter().filter(|h| metric_ok(&h.graph)) {
                let extra = format!("supergraph {}", gp.id);
                sink.many("regular_supergraph", &h.id, &extra, || {
                    bounds::regular_supergraph_bounds(&g.graph, &gp.graph, &h.graph, src)
                        .map(|(a, b)| vec![a, b])
                });
            }
            out.extend(sink.records);
        }
    }
    out
}

/// Runs every applicable check for every graph against every metric graph.
pub fn run_campaign(
    corpus: &[NamedGraph],
    hs: &[NamedGraph],
    opts: &CampaignOptions,
) -> CampaignReport {
    let src = GapCache::new(opts.gap.clone());
    let mut records: Vec<CheckRecord> = corpus
        .par_iter()
        .enumerate()
        .flat_map_iter(|(gi, g)| checks_for_graph(gi, g, hs, &src, opts))
        .collect();
    records.extend(regular_pairs(corpus, hs, &src, opts.timing));
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));

    let mut summary = Summary {
        total: records.len(),
        ..Summary::default()
    };
    for r in &records {
        match r.outcome {
            Outcome::Pass => summary.passed += 1,
            Outcome::Fail => summary.failed += 1,
            Outcome::NotApplicable => summary.not_applicable += 1,
            Outcome::Informational => summary.informational += 1,
            Outcome::Error => summary.errors += 1,
        }
    }
    CampaignReport {
        format_version: FORMAT_VERSION,
        graphs: corpus.len(),
        h_list: hs.iter().map(|h| h.id.clone()).collect(),
        summary,
        records,
    }
}
