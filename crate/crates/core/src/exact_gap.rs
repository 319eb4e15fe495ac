//! Exact nonlinear spectral gap `lambda(G, H)` of a graph `G` mapped into the
//! shortest-path metric of a graph `H`.
//!
//! For a map `f: V(G) -> V(H)` the Rayleigh-type quotient is
//!
//! ```text
//!         vol(G) * sum_{u~v} d(f(u), f(v))^2
//! R_f = -----------------------------------------
//!        sum_{ {u,v} } d(f(u), f(v))^2 * d_u * d_v
//! ```
//!
//! with the numerator over edges and the denominator over unordered vertex
//! pairs. Every ingredient is an integer when `H` is a graph, so values are
//! kept as exact fractions. The gap is the minimum of `R_f` over all
//! nonconstant maps with a positive denominator.
//!
//! The search enumerates image arrays with a mixed-radix counter (last vertex
//! fastest). State is updated incrementally per digit change: the edge sum
//! over the neighbors of the moved vertex, and the pair sum through the
//! per-target volume classes `x_i = vol(f^-1(i))`, since
//! `sum_{ {u,v} } d^2 d_u d_v = sum_{i<j} d(i,j)^2 x_i x_j`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{apsp, DistanceMatrix, Graph};
use crate::orbits::{vertex_orbits, OrbitPartition};
use crate::rational::Rational;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GapError {
    #[error("assignment is constant")]
    ConstantAssignment,
    #[error("denominator is zero (only zero-degree vertices are separated)")]
    ZeroDenominator,
    #[error("vertices {0} and {1} are mapped to different components of the metric")]
    InfiniteDistance(usize, usize),
    #[error("assignment has length {got}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("image {image} of vertex {vertex} is not a point of the {k}-point metric")]
    ImageOutOfRange {
        vertex: usize,
        image: usize,
        k: usize,
    },
    #[error("metric graph needs at least two vertices, got {0}")]
    TooFewPoints(usize),
    #[error("search needs {required} assignments, budget is {budget}")]
    BudgetExceeded {
        required: u128,
        budget: u64,
        upper_bound: Option<Rational>,
    },
    #[error("gap is undefined: every nonconstant assignment has a zero denominator")]
    UndefinedGap,
}

/// A map `V(G) -> V(H)` given by the image of each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Assignment(pub Vec<usize>);

impl Assignment {
    pub fn new(image: Vec<usize>) -> Self {
        Assignment(image)
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

impl From<Vec<usize>> for Assignment {
    fn from(v: Vec<usize>) -> Self {
        Assignment(v)
    }
}

/// The three integer sums behind `R_f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RayleighParts {
    pub volume: u64,
    /// `sum_{u~v} d(f(u), f(v))^2`
    pub edge_sum: u64,
    /// `sum_{ {u,v} } d(f(u), f(v))^2 d_u d_v`
    pub pair_sum: u64,
}

impl RayleighParts {
    pub fn numerator(&self) -> u128 {
        u128::from(self.volume) * u128::from(self.edge_sum)
    }

    pub fn value(&self) -> Option<Rational> {
        (self.pair_sum > 0).then(|| Rational::new(self.numerator(), self.pair_sum))
    }
}

fn check_assignment(g: &Graph, dist: &DistanceMatrix, f: &Assignment) -> Result<(), GapError> {
    if f.len() != g.n() {
        return Err(GapError::LengthMismatch {
            expected: g.n(),
            got: f.len(),
        });
    }
    for (vertex, &image) in f.image().iter().enumerate() {
        if image >= dist.k() {
            return Err(GapError::ImageOutOfRange {
                vertex,
                image,
                k: dist.k(),
            });
        }
    }
    Ok(())
}

/// Direct evaluation of the three sums, pair by pair.
pub fn rayleigh_parts(
    g: &Graph,
    dist: &DistanceMatrix,
    f: &Assignment,
) -> Result<RayleighParts, GapError> {
    check_assignment(g, dist, f)?;
    let img = f.image();
    let d2 = |u: usize, v: usize| -> Result<u64, GapError> {
        dist.get(img[u], img[v])
            .map(|d| u64::from(d) * u64::from(d))
            .ok_or(GapError::InfiniteDistance(u.min(v), u.max(v)))
    };
    let mut edge_sum = 0u64;
    for &(u, v) in g.edges() {
        edge_sum += d2(u, v)?;
    }
    let deg = g.degrees();
    let mut pair_sum = 0u64;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            pair_sum += d2(u, v)? * (deg[u] * deg[v]) as u64;
        }
    }
    Ok(RayleighParts {
        volume: g.volume() as u64,
        edge_sum,
        pair_sum,
    })
}

/// Exact `R_f(G, H)`.
pub fn rayleigh_quotient(
    g: &Graph,
    dist: &DistanceMatrix,
    f: &Assignment,
) -> Result<Rational, GapError> {
    check_assignment(g, dist, f)?;
    if f.is_constant() {
        return Err(GapError::ConstantAssignment);
    }
    rayleigh_parts(g, dist, f)?
        .value()
        .ok_or(GapError::ZeroDenominator)
}

/// Certified upper bound `lambda(G, H) <= R_f` from a single map.
pub fn lambda_upper_witness(g: &Graph, h: &Graph, f: &Assignment) -> Result<Rational, GapError> {
    rayleigh_quotient(g, &apsp(h), f)
}

#[derive(Clone, Debug)]
pub struct GapOptions {
    /// Maximum `k^n` (before pruning) a search may enumerate.
    pub budget: u64,
    pub orbit_pruning: bool,
    pub parallel: bool,
}

impl Default for GapOptions {
    fn default() -> Self {
        GapOptions {
            budget: DEFAULT_BUDGET,
            orbit_pruning: true,
            parallel: true,
        }
    }
}

impl GapOptions {
    pub fn serial() -> Self {
        GapOptions {
            parallel: false,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn without_pruning(mut self) -> Self {
        self.orbit_pruning = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapResult {
    pub value: Rational,
    pub witness: Assignment,
    pub assignments_evaluated: u64,
    pub assignments_skipped_zero_denominator: u64,
}

/// Exact `lambda(G, H)`.
///
/// A disconnected `H` gives the minimum over its components with at least two
/// vertices; the witness is reported in the original labels of `H`.
pub fn lambda_exact(g: &Graph, h: &Graph, opts: &GapOptions) -> Result<GapResult, GapError> {
    if h.n() < 2 {
        return Err(GapError::TooFewPoints(h.n()));
    }
    let comps: Vec<Vec<usize>> = h
        .components()
        .into_iter()
        .filter(|c| c.len() >= 2)
        .collect();
    if comps.is_empty() {
        return Err(GapError::UndefinedGap);
    }
    for comp in &comps {
        let required = (comp.len() as u128)
            .checked_pow(g.n() as u32)
            .unwrap_or(u128::MAX);
        if required > u128::from(opts.budget) {
            return Err(GapError::BudgetExceeded {
                required,
                budget: opts.budget,
                upper_bound: cheap_upper_bound(g, h),
            });
        }
    }

    let mut best: Option<(Best, Vec<usize>)> = None;
    let mut evaluated = 0;
    let mut skipped = 0;
    for comp in &comps {
        let sub = h.induced(comp);
        let dist = apsp(&sub);
        let orbits = if opts.orbit_pruning {
            vertex_orbits(&sub)
        } else {
            OrbitPartition::singletons(sub.n())
        };
        let out = search(g, &dist, &orbits, opts.parallel);
        evaluated += out.evaluated;
        skipped += out.skipped;
        if let Some(b) = out.best {
            let better = match &best {
                None => true,
                Some((cur, _)) => b.cmp_value(cur) == Ordering::Less,
            };
            if better {
                best = Some((b, comp.clone()));
            }
        }
    }
    let (best, comp) = best.ok_or(GapError::UndefinedGap)?;
    let witness = Assignment(best.image.iter().map(|&i| comp[i]).collect());
    Ok(GapResult {
        value: Rational::new(
            u128::from(best.volume) * u128::from(best.edge_sum),
            best.pair_sum,
        ),
        witness,
        assignments_evaluated: evaluated,
        assignments_skipped_zero_denominator: skipped,
    })
}

/// Best value over single-vertex isolations onto the first edge of `H`.
fn cheap_upper_bound(g: &Graph, h: &Graph) -> Option<Rational> {
    let &(a, b) = h.edges().first()?;
    let dist = apsp(h);
    (0..g.n())
        .filter_map(|v| {
            let f = Assignment((0..g.n()).map(|u| if u == v { b } else { a }).collect());
            rayleigh_quotient(g, &dist, &f).ok()
        })
        .min()
}

#[derive(Clone, Debug)]
struct Best {
    volume: u64,
    edge_sum: u64,
    pair_sum: u64,
    image: Vec<usize>,
}

impl Best {
    /// Compares `edge_sum / pair_sum` exactly (volume is common).
    fn cmp_value(&self, other: &Best) -> Ordering {
        let lhs = u128::from(self.volume) * u128::from(self.edge_sum) * u128::from(other.pair_sum);
        let rhs = u128::from(other.volume) * u128::from(other.edge_sum) * u128::from(self.pair_sum);
        lhs.cmp(&rhs)
    }
}

#[derive(Default)]
struct SearchOutcome {
    best: Option<Best>,
    evaluated: u64,
    skipped: u64,
}

impl SearchOutcome {
    /// Associative merge; ties keep `self`, which precedes `other` in
    /// enumeration order.
    fn merge(mut self, other: SearchOutcome) -> SearchOutcome {
        self.evaluated += other.evaluated;
        self.skipped += other.skipped;
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(if b.cmp_value(&a) == Ordering::Less {
                b
            } else {
                a
            }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Number of leading positions fixed per parallel task.
fn prefix_len(n: usize, k: usize, reps: usize) -> usize {
    const TARGET_TASKS: usize = 256;
    let mut p = 1;
    let mut tasks = reps;
    while p < n && tasks < TARGET_TASKS {
        tasks *= k;
        p += 1;
    }
    p.min(n)
}

fn search(
    g: &Graph,
    dist: &DistanceMatrix,
    orbits: &OrbitPartition,
    parallel: bool,
) -> SearchOutcome {
    let n = g.n();
    let k = dist.k();
    if n < 2 {
        return SearchOutcome::default();
    }
    let reps = orbits.representatives();
    let p = prefix_len(n, k, reps.len());

    let mut prefixes = Vec::new();
    let mut digits = vec![0usize; p];
    'outer: for &r in &reps {
        digits[0] = r;
        for d in digits[1..].iter_mut() {
            *d = 0;
        }
        loop {
            prefixes.push(digits.clone());
            let mut pos = p;
            loop {
                if pos == 1 {
                    continue 'outer;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < k {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    let ctx = Context::new(g, dist);
    let run = |prefix: &Vec<usize>| ctx.enumerate_suffix(prefix);
    let outcomes: Vec<SearchOutcome> = if parallel {
        prefixes.par_iter().map(run).collect()
    } else {
        prefixes.iter().map(run).collect()
    };
    outcomes
        .into_iter()
        .fold(SearchOutcome::default(), SearchOutcome::merge)
}

struct Context<'a> {
    g: &'a Graph,
    k: usize,
    deg: Vec<u64>,
    /// squared distances, row-major `k x k`
    d2: Vec<u64>,
}

impl<'a> Context<'a> {
    fn new(g: &'a Graph, dist: &DistanceMatrix) -> Self {
        let k = dist.k();
        let d2 = (0..k * k)
            .map(|idx| {
                let d = u64::from(dist.raw(idx / k, idx % k));
                d * d
            })
            .collect();
        Context {
            g,
            k,
            deg: g.degrees().into_iter().map(|d| d as u64).collect(),
            d2,
        }
    }

    fn enumerate_suffix(&self, prefix: &[usize]) -> SearchOutcome {
        let n = self.g.n();
        let k = self.k;
        let volume = self.g.volume() as u64;
        let mut state = State::new(self, prefix);
        let mut out = SearchOutcome::default();
        loop {
            if state.count[state.image[0]] != n {
                if state.pair_sum == 0 {
                    out.skipped += 1;
                } else {
                    out.evaluated += 1;
                    let better = match &out.best {
                        None => true,
                        Some(b) => {
                            u128::from(state.edge_sum) * u128::from(b.pair_sum)
                                < u128::from(b.edge_sum) * u128::from(state.pair_sum)
                        }
                    };
                    if better {
                        out.best = Some(Best {
                            volume,
                            edge_sum: state.edge_sum,
                            pair_sum: state.pair_sum,
                            image: state.image.clone(),
                        });
                    }
                }
            }
            // advance the counter over positions prefix.len()..n
            let mut pos = n;
            loop {
                if pos == prefix.len() {
                    return out;
                }
                pos -= 1;
                let next = state.image[pos] + 1;
                if next < k {
                    state.relocate(self, pos, next);
                    break;
                }
                state.relocate(self, pos, 0);
            }
        }
    }
}

struct State {
    image: Vec<usize>,
    /// per-target volume
    class_volume: Vec<u64>,
    /// per-target vertex count
    count: Vec<usize>,
    edge_sum: u64,
    pair_sum: u64,
}

impl State {
    fn new(ctx: &Context<'_>, prefix: &[usize]) -> Self {
        let n = ctx.g.n();
        let k = ctx.k;
        let mut image = vec![0; n];
        image[..prefix.len()].copy_from_slice(prefix);
        let mut class_volume = vec![0u64; k];
        let mut count = vec![0usize; k];
        for (v, &i) in image.iter().enumerate() {
            class_volume[i] += ctx.deg[v];
            count[i] += 1;
        }
        let edge_sum = ctx
            .g
            .edges()
            .iter()
            .map(|&(u, v)| ctx.d2[image[u] * k + image[v]])
            .sum();
        let mut pair_sum = 0;
        for i in 0..k {
            for j in i + 1..k {
                pair_sum += ctx.d2[i * k + j] * class_volume[i] * class_volume[j];
            }
        }
        State {
            image,
            class_volume,
            count,
            edge_sum,
            pair_sum,
        }
    }

    /// Moves vertex `v` to target `to`, updating both sums.
    fn relocate(&mut self, ctx: &Context<'_>, v: usize, to: usize) {
        let from = self.image[v];
        if from == to {
            return;
        }
        let k = ctx.k;
        let row_from = &ctx.d2[from * k..(from + 1) * k];
        let row_to = &ctx.d2[to * k..(to + 1) * k];
        for &w in ctx.g.neighbors(v) {
            let t = self.image[w];
            self.edge_sum = self.edge_sum + row_to[t] - row_from[t];
        }
        let w = ctx.deg[v];
        if w > 0 {
            self.class_volume[from] -= w;
            let leave: u64 = row_from
                .iter()
                .zip(&self.class_volume)
                .map(|(d, x)| d * x)
                .sum();
            let join: u64 = row_to
                .iter()
                .zip(&self.class_volume)
                .map(|(d, x)| d * x)
                .sum();
            self.pair_sum = self.pair_sum + w * join - w * leave;
            self.class_volume[to] += w;
        }
        self.count[from] -= 1;
        self.count[to] += 1;
        self.image[v] = to;
    }
}
