//! Closed-form inequalities on `R_f` and `lambda(G, H)` as checkable
//! predicates.
//!
//! Every bound evaluates to an exact [`Rational`] and is compared against an
//! exact subject value, so `holds` is decided without rounding. A bound whose
//! hypotheses are not met is reported as [`Status::NotApplicable`], which is
//! distinct from a violation.

use serde::Serialize;

use crate::exact_gap::{lambda_exact, rayleigh_parts, Assignment, GapError, GapOptions};
use crate::families::complete;
use crate::graph::{apsp, Graph};
use crate::rational::Rational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("{0} must be connected")]
    Disconnected(&'static str),
    #[error("sum C = {0} is below 6")]
    SumTooSmall(u64),
    #[error("vector length k = {0} is below 2")]
    TooFewEntries(usize),
    #[error("n = {0} is below {1}")]
    OrderTooSmall(usize, usize),
    #[error("{0} is not regular")]
    NotRegular(&'static str),
    #[error("assignment is constant")]
    ConstantAssignment,
    #[error("metric graphs must share a vertex set (got {0} and {1} vertices)")]
    VertexSetMismatch(usize, usize),
    #[error("second graph is not the first plus exactly one edge")]
    NotOneEdgeSupergraph,
    #[error("second graph is not a (d+1)-regular supergraph of the d-regular first graph")]
    NotRegularSupergraph,
    #[error("graph is not a subgraph of the metric graph")]
    NotSubgraph,
    #[error(transparent)]
    Gap(#[from] GapError),
}

/// How the subject value must relate to the bound value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    AtLeast,
    AtMost,
    Equal,
    StrictlyBelow,
    StrictlyAbove,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::AtLeast => ">=",
            Direction::AtMost => "<=",
            Direction::Equal => "=",
            Direction::StrictlyBelow => "<",
            Direction::StrictlyAbove => ">",
        }
    }

    fn satisfied(self, subject: &Rational, bound: &Rational) -> bool {
        match self {
            Direction::AtLeast => subject >= bound,
            Direction::AtMost => subject <= bound,
            Direction::Equal => subject == bound,
            Direction::StrictlyBelow => subject < bound,
            Direction::StrictlyAbove => subject > bound,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The inequality was evaluated and counts toward pass/fail.
    Checked,
    /// Hypotheses not met; nothing evaluated.
    NotApplicable,
    /// Evaluated and recorded, never counted as a failure.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub direction: Direction,
    pub bound_value: Option<Rational>,
    pub subject_value: Option<Rational>,
    /// `subject - bound`
    pub slack: Option<Rational>,
    pub holds: bool,
    pub status: Status,
    pub note: String,
}

impl BoundReport {
    pub fn check(name: &str, direction: Direction, bound: Rational, subject: Rational) -> Self {
        let holds = direction.satisfied(&subject, &bound);
        BoundReport {
            name: name.to_string(),
            direction,
            slack: Some(&subject - &bound),
            bound_value: Some(bound),
            subject_value: Some(subject),
            holds,
            status: Status::Checked,
            note: String::new(),
        }
    }

    pub fn informational(
        name: &str,
        direction: Direction,
        bound: Rational,
        subject: Rational,
    ) -> Self {
        BoundReport {
            status: Status::Informational,
            ..Self::check(name, direction, bound, subject)
        }
    }

    pub fn not_applicable(name: &str, direction: Direction, reason: impl Into<String>) -> Self {
        BoundReport {
            name: name.to_string(),
            direction,
            bound_value: None,
            subject_value: None,
            slack: None,
            holds: false,
            status: Status::NotApplicable,
            note: reason.into(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Checked and violated.
    pub fn failed(&self) -> bool {
        self.status == Status::Checked && !self.holds
    }
}

/// Supplies exact gap values; lets campaigns share a cache.
pub trait GapSource {
    fn gap(&self, g: &Graph, h: &Graph) -> Result<Rational, GapError>;
}

/// Computes every gap from scratch with [`lambda_exact`].
#[derive(Clone, Debug, Default)]
pub struct ExactGaps(pub GapOptions);

impl GapSource for ExactGaps {
    fn gap(&self, g: &Graph, h: &Graph) -> Result<Rational, GapError> {
        lambda_exact(g, h, &self.0).map(|r| r.value)
    }
}

fn int(v: impl TryInto<i64>) -> Rational {
    Rational::from_integer(v.try_into().ok().expect("fits in i64"))
}

fn connected_diameter(g: &Graph, which: &'static str) -> Result<u32, BoundError> {
    g.diameter()
        .filter(|_| g.n() > 0)
        .ok_or(BoundError::Disconnected(which))
}

/// Maximum of `||x||_2^2` over nonnegative integer vectors of length `k`
/// summing to `c` with at least two positive entries: `c^2 - 2c + 2`.
pub fn opt_lemma_max(c: u64, k: usize) -> Result<u64, BoundError> {
    if c < 6 {
        return Err(BoundError::SumTooSmall(c));
    }
    if k < 2 {
        return Err(BoundError::TooFewEntries(k));
    }
    Ok(c * c - 2 * c + 2)
}

/// Per-target volumes `x_i = vol(f^-1(i))` of an assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeClassVector(pub Vec<u64>);

impl VolumeClassVector {
    pub fn from_assignment(g: &Graph, f: &Assignment, k: usize) -> Self {
        let mut x = vec![0u64; k];
        for (v, &i) in f.image().iter().enumerate() {
            x[i] += g.degree(v) as u64;
        }
        VolumeClassVector(x)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn norm_sq(&self) -> u64 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// At least two positive entries.
    pub fn is_feasible(&self) -> bool {
        self.0.iter().filter(|&&x| x > 0).count() >= 2
    }
}

/// Lower `vol(G) - 1 <= S` and upper `S <= vol(G)^2 D_H^2 (1 - 1/k) / 2`
/// bounds on the denominator `S = sum_{ {u,v} } d(f(u), f(v))^2 d_u d_v`.
/// The lower bound needs `vol(G) >= 6` and is otherwise not applicable.
pub fn denominator_bounds(
    g: &Graph,
    h: &Graph,
    f: &Assignment,
) -> Result<(BoundReport, BoundReport), BoundError> {
    connected_diameter(g, "G")?;
    let d_h = connected_diameter(h, "H")?;
    if f.is_constant() {
        return Err(BoundError::ConstantAssignment);
    }
    let parts = rayleigh_parts(g, &apsp(h), f)?;
    let vol = g.volume() as i64;
    let subject = int(parts.pair_sum);
    let lower = if vol >= 6 {
        BoundReport::check(
            "denominator_lower",
            Direction::AtLeast,
            int(vol - 1),
            subject.clone(),
        )
    } else {
        BoundReport::not_applicable("denominator_lower", Direction::AtLeast, "vol(G) < 6")
    };
    let k = h.n() as i64;
    let d2 = i64::from(d_h).pow(2);
    let upper_bound = Rational::new(vol * vol * d2 * (k - 1), 2 * k);
    let upper = BoundReport::check("denominator_upper", Direction::AtMost, upper_bound, subject);
    Ok((lower, upper))
}

/// `S_G = (C(n,2) - m) D_G^2`, or `None` when `G` is disconnected.
pub fn s_g(g: &Graph) -> Option<u64> {
    let d = u64::from(g.diameter()?);
    Some((g.pair_count() - g.m()) as u64 * d * d)
}

/// `lambda(G, H) >= vol(G) / (Delta^2 (1 + S_G))`.
pub fn lower_bound_sg(
    g: &Graph,
    h: &Graph,
    src: &dyn GapSource,
) -> Result<BoundReport, BoundError> {
    let s = s_g(g)
        .filter(|_| g.n() >= 2)
        .ok_or(BoundError::Disconnected("G"))?;
    let delta_max = g.max_degree() as u64;
    let bound = Rational::new(g.volume() as u64, delta_max * delta_max * (1 + s));
    Ok(BoundReport::check(
        "sg_lower",
        Direction::AtLeast,
        bound,
        src.gap(g, h)?,
    ))
}

/// `n / (n - 1)`, the largest possible gap on `n` vertices.
pub fn upper_bound_complete(n: usize) -> Result<Rational, BoundError> {
    if n < 2 {
        return Err(BoundError::OrderTooSmall(n, 2));
    }
    Ok(Rational::new(n as i64, n as i64 - 1))
}

/// `lambda(G, H) <= n / (n - 1)`.
pub fn complete_upper(
    g: &Graph,
    h: &Graph,
    src: &dyn GapSource,
) -> Result<BoundReport, BoundError> {
    let bound = upper_bound_complete(g.n())?;
    Ok(BoundReport::check(
        "complete_upper",
        Direction::AtMost,
        bound,
        src.gap(g, h)?,
    ))
}

/// `lambda(G, H) = n/(n-1)` exactly when `G` is complete, and is strictly
/// smaller otherwise.
pub fn equality_iff_complete(
    g: &Graph,
    h: &Graph,
    src: &dyn GapSource,
) -> Result<BoundReport, BoundError> {
    let bound = upper_bound_complete(g.n())?;
    let dir = if g.is_complete() {
        Direction::Equal
    } else {
        Direction::StrictlyBelow
    };
    Ok(BoundReport::check(
        "equality_iff_complete",
        dir,
        bound,
        src.gap(g, h)?,
    ))
}

/// `lambda(G, H) > 0` exactly when `G` is connected. Graphs with an isolated
/// vertex are not applicable.
pub fn positivity_iff_connected(
    g: &Graph,
    h: &Graph,
    src: &dyn GapSource,
) -> Result<BoundReport, BoundError> {
    const NAME: &str = "positive_iff_connected";
    if g.has_isolated_vertex() {
        return Ok(BoundReport::not_applicable(
            NAME,
            Direction::Equal,
            "G has an isolated vertex",
        ));
    }
    let value = src.gap(g, h)?;
    let report = if g.is_connected() {
        BoundReport::check(NAME, Direction::StrictlyAbove, Rational::zero(), value)
            .with_note("connected")
    } else {
        BoundReport::check(NAME, Direction::Equal, Rational::zero(), value)
            .with_note("disconnected")
    };
    Ok(report)
}

/// `lambda(G, H) >= 2k / (D_H^2 vol(G) (k - 1))`.
pub fn naive_lower(g: &Graph, h: &Graph, src: &dyn GapSource) -> Result<BoundReport, BoundError> {
    connected_diameter(g, "G")?;
    let d_h = u64::from(connected_diameter(h, "H")?);
    let k = h.n() as u64;
    let bound = Rational::new(2 * k, d_h * d_h * g.volume() as u64 * (k - 1));
    Ok(BoundReport::check(
        "naive_lower",
        Direction::AtLeast,
        bound,
        src.gap(g, h)?,
    ))
}

/// `lambda(G, H) >= 2 / ((n - 1) d D_H^2)` for `d`-regular `G`.
pub fn naive_lower_regular(
    g: &Graph,
    h: &Graph,
    src: &dyn GapSource,
) -> Result<BoundReport, BoundError> {
    connected_diameter(g, "G")?;
    let d_h = u64::from(connected_diameter(h, "H")?);
    let d = g.regular_degree().ok_or(BoundError::NotRegular("G"))? as u64;
    let bound = Rational::new(2, (g.n() as u64 - 1) * d * d_h * d_h);
    Ok(BoundReport::check(
        "naive_lower_regular",
        Direction::AtLeast,
        bound,
        src.gap(g, h)?,
    ))
}

/// Two-sided bounds on `lambda(G, H') / lambda(G, H)` for two metric graphs on
/// one vertex set.
///
/// Reports, in order: the `S_G` window (both sides); the volume/diameter
/// window `3 vol D_H^2 D_H'^2 / 5` (both sides, needs `vol(G) >= 6`); the
/// `Delta^2 D_H m (k-1)^2 / delta^2` form (informational); and the
/// `4 Delta^2 / delta^2` window when `H` is complete and `H'` is `H` minus one
/// edge.
pub fn h_perturbation_ratio_bounds(
    g: &Graph,
    h: &Graph,
    h2: &Graph,
    src: &dyn GapSource,
) -> Result<Vec<BoundReport>, BoundError> {
    connected_diameter(g, "G")?;
    let d_h = i64::from(connected_diameter(h, "H")?);
    let d_h2 = i64::from(connected_diameter(h2, "H'")?);
    if h.n() != h2.n() {
        return Err(BoundError::VertexSetMismatch(h.n(), h2.n()));
    }
    let lambda = src.gap(g, h)?;
    let lambda2 = src.gap(g, h2)?;
    let ratio = &lambda2 / &lambda;
    let (dmax, dmin) = (g.max_degree() as i64, g.min_degree() as i64);
    let vol = g.volume() as i64;
    let k = h.n() as i64;
    let mut out = Vec::new();

    let sg = s_g(g).expect("connected") as i64;
    let beta = Rational::new(dmax * dmax * (1 + sg), dmin * dmin);
    out.push(BoundReport::check(
        "h_ratio_sg_upper",
        Direction::AtMost,
        beta.clone(),
        ratio.clone(),
    ));
    out.push(BoundReport::check(
        "h_ratio_sg_lower",
        Direction::AtLeast,
        beta.recip(),
        ratio.clone(),
    ));

    if vol >= 6 {
        let c = Rational::new(3 * vol * d_h * d_h * d_h2 * d_h2, 5);
        out.push(BoundReport::check(
            "h_ratio_volume_upper",
            Direction::AtMost,
            c.clone(),
            ratio.clone(),
        ));
        out.push(BoundReport::check(
            "h_ratio_volume_lower",
            Direction::AtLeast,
            c.recip(),
            ratio.clone(),
        ));
    } else {
        for name in ["h_ratio_volume_upper", "h_ratio_volume_lower"] {
            out.push(BoundReport::not_applicable(
                name,
                Direction::AtMost,
                "vol(G) < 6",
            ));
        }
    }

    let statement = Rational::new(
        dmax * dmax * d_h * g.m() as i64 * (k - 1) * (k - 1),
        dmin * dmin,
    );
    out.push(BoundReport::informational(
        "h_ratio_statement_form",
        Direction::AtMost,
        statement,
        ratio.clone(),
    ));

    let one_edge_removed = h.is_complete() && h2.m() + 1 == h.m() && h2.is_spanning_subgraph_of(h);
    if one_edge_removed {
        let w = Rational::new(4 * dmax * dmax, dmin * dmin);
        out.push(BoundReport::check(
            "h_ratio_minus_edge_upper",
            Direction::AtMost,
            w.clone(),
            ratio.clone(),
        ));
        out.push(BoundReport::check(
            "h_ratio_minus_edge_lower",
            Direction::AtLeast,
            w.recip(),
            ratio,
        ));
    } else {
        for name in ["h_ratio_minus_edge_upper", "h_ratio_minus_edge_lower"] {
            out.push(BoundReport::not_applicable(
                name,
                Direction::AtMost,
                "H is not complete or H' is not H minus one edge",
            ));
        }
    }
    Ok(out)
}

/// `lambda(G, H) <= D_{H'}^2 lambda(G, H')` for a connected subgraph `H'` of
/// `H` (up to relabeling).
pub fn subgraph_bound(
    g: &Graph,
    h: &Graph,
    h_sub: &Graph,
    src: &dyn GapSource,
) -> Result<BoundReport, BoundError> {
    let d_sub = i64::from(connected_diameter(h_sub, "H'")?);
    connected_diameter(h, "H")?;
    if h_sub.subgraph_embedding(h).is_none() {
        return Err(BoundError::NotSubgraph);
    }
    let bound = int(d_sub * d_sub) * src.gap(g, h_sub)?;
    Ok(BoundReport::check(
        "subgraph",
        Direction::AtMost,
        bound,
        src.gap(g, h)?,
    ))
}

/// `lambda(G, H) <= lambda(G, K_2)` for connected `H` with at least two
/// vertices.
pub fn k2_extremality(
    g: &Graph,
    h: &Graph,
    src: &dyn GapSource,
) -> Result<BoundReport, BoundError> {
    connected_diameter(h, "H")?;
    if h.n() < 2 {
        return Err(BoundError::OrderTooSmall(h.n(), 2));
    }
    let bound = src.gap(g, &complete(2))?;
    Ok(BoundReport::check(
        "k2_extremality",
        Direction::AtMost,
        bound,
        src.gap(g, h)?,
    ))
}

/// `lambda(G, K_2) >= lambda(G, K_3) >= ... ` with equality once `j >= n`.
/// One report per consecutive pair `(K_j, K_{j+1})`, `2 <= j < top`.
pub fn complete_chain(
    g: &Graph,
    top: usize,
    src: &dyn GapSource,
) -> Result<Vec<BoundReport>, BoundError> {
    let mut out = Vec::new();
    let mut prev = src.gap(g, &complete(2))?;
    for j in 2..top {
        let next = src.gap(g, &complete(j + 1))?;
        let (name, dir) = if j >= g.n() {
            ("complete_chain_equal", Direction::Equal)
        } else {
            ("complete_chain_monotone", Direction::AtMost)
        };
        out.push(
            BoundReport::check(name, dir, prev.clone(), next.clone()).with_note(format!(
                "K_{} vs K_{}",
                j + 1,
                j
            )),
        );
        prev = next;
    }
    Ok(out)
}

/// The two candidate terms of the edge-addition lower bound,
/// `(vol-1) / (vol-1 + D_H^2 (2 vol + 1))` and `1/4`, before the common
/// factor `1 + 2/vol`.
pub fn edge_addition_lower_terms(vol: u64, d_h: u64) -> (Rational, Rational) {
    let first = Rational::new(vol - 1, vol - 1 + d_h * d_h * (2 * vol + 1));
    (first, Rational::new(1, 4))
}

fn one_added_edge(g: &Graph, g_plus: &Graph) -> Option<(usize, usize)> {
    if g.n() != g_plus.n() || g_plus.m() != g.m() + 1 || !g.is_spanning_subgraph_of(g_plus) {
        return None;
    }
    g_plus
        .edges()
        .iter()
        .copied()
        .find(|&(u, v)| !g.has_edge(u, v))
}

/// Window on `lambda(G + e, H) / lambda(G, H)`:
/// upper `(1 + 2/vol)(1 + D_H^2)`, lower `(1 + 2/vol) max(first, 1/4)` with
/// the terms from [`edge_addition_lower_terms`]. Needs `vol(G) >= 6`.
pub fn edge_addition_bounds(
    g: &Graph,
    g_plus: &Graph,
    h: &Graph,
    src: &dyn GapSource,
) -> Result<(BoundReport, BoundReport), BoundError> {
    connected_diameter(g, "G")?;
    let d_h = u64::from(connected_diameter(h, "H")?);
    one_added_edge(g, g_plus).ok_or(BoundError::NotOneEdgeSupergraph)?;
    let vol = g.volume() as u64;
    if vol < 6 {
        return Ok((
            BoundReport::not_applicable("edge_addition_upper", Direction::AtMost, "vol(G) < 6"),
            BoundReport::not_applicable("edge_addition_lower", Direction::AtLeast, "vol(G) < 6"),
        ));
    }
    let ratio = &src.gap(g_plus, h)? / &src.gap(g, h)?;
    let factor = Rational::new(vol + 2, vol);
    let upper = &factor * &int(1 + d_h * d_h);
    let (first, quarter) = edge_addition_lower_terms(vol, d_h);
    let dominant = if first >= quarter {
        "volume term"
    } else {
        "1/4 term"
    };
    let lower = &factor * &first.max(quarter);
    Ok((
        BoundReport::check(
            "edge_addition_upper",
            Direction::AtMost,
            upper,
            ratio.clone(),
        ),
        BoundReport::check("edge_addition_lower", Direction::AtLeast, lower, ratio)
            .with_note(format!("{dominant} dominates")),
    ))
}

/// Window `[d/(d+1), d/(d+1) (1 + n D_H^2 / 2)]` on
/// `lambda(G', H) / lambda(G, H)` when `G'` is a `(d+1)`-regular supergraph
/// of the `d`-regular `G`.
pub fn regular_supergraph_bounds(
    g: &Graph,
    g_plus: &Graph,
    h: &Graph,
    src: &dyn GapSource,
) -> Result<(BoundReport, BoundReport), BoundError> {
    connected_diameter(g, "G")?;
    let d_h = i64::from(connected_diameter(h, "H")?);
    let d = g.regular_degree().ok_or(BoundError::NotRegular("G"))? as i64;
    let is_super =
        g.is_spanning_subgraph_of(g_plus) && g_plus.regular_degree() == Some(d as usize + 1);
    if !is_super {
        return Err(BoundError::NotRegularSupergraph);
    }
    let ratio = &src.gap(g_plus, h)? / &src.gap(g, h)?;
    let base = Rational::new(d, d + 1);
    let n = g.n() as i64;
    let upper = &base * &Rational::new(2 + n * d_h * d_h, 2);
    Ok((
        BoundReport::check(
            "regular_supergraph_upper",
            Direction::AtMost,
            upper,
            ratio.clone(),
        ),
        BoundReport::check("regular_supergraph_lower", Direction::AtLeast, base, ratio),
    ))
}

/// `lambda(K_{n,...,n} (j parts), K_2) = 1` and `lambda(K_{n,n}, K_k) = 1`.
///
/// With `n = 1` the multipartite graph is `K_j`, whose gap is `j/(j-1)`; that
/// case is recorded as informational.
pub fn bipartite_identities(
    n: usize,
    j: usize,
    k: usize,
    src: &dyn GapSource,
) -> Result<(BoundReport, BoundReport), BoundError> {
    if n < 1 {
        return Err(BoundError::OrderTooSmall(n, 1));
    }
    if j < 2 {
        return Err(BoundError::OrderTooSmall(j, 2));
    }
    if k < 2 {
        return Err(BoundError::OrderTooSmall(k, 2));
    }
    let multi = crate::families::Family::CompleteMultipartite(n, j)
        .generate()
        .expect("valid");
    let v1 = src.gap(&multi, &complete(2))?;
    let first = if n >= 2 {
        BoundReport::check(
            "multipartite_k2_is_one",
            Direction::Equal,
            Rational::one(),
            v1,
        )
    } else {
        BoundReport::informational(
            "multipartite_k2_is_one",
            Direction::Equal,
            Rational::one(),
            v1,
        )
        .with_note("parts of size 1 give a complete graph")
    };
    let bip = crate::families::complete_bipartite(n, n);
    let v2 = src.gap(&bip, &complete(k))?;
    let second = BoundReport::check(
        "balanced_bipartite_kk_is_one",
        Direction::Equal,
        Rational::one(),
        v2,
    );
    Ok((first, second))
}

/// `1 <= lambda(K_n - e, K_2) < n / (n - 1)`.
pub fn kn_minus_edge_check(
    n: usize,
    src: &dyn GapSource,
) -> Result<(BoundReport, BoundReport), BoundError> {
    if n < 3 {
        return Err(BoundError::OrderTooSmall(n, 3));
    }
    let g = crate::families::Family::CompleteMinusEdge(n)
        .generate()
        .expect("n >= 3");
    let value = src.gap(&g, &complete(2))?;
    Ok((
        BoundReport::check(
            "kn_minus_edge_lower",
            Direction::AtLeast,
            Rational::one(),
            value.clone(),
        ),
        BoundReport::check(
            "kn_minus_edge_upper",
            Direction::StrictlyBelow,
            upper_bound_complete(n)?,
            value,
        ),
    ))
}

/// For ascending `ns`, each `lambda(K_n - e, K_2)` lies below the window top
/// `m/(m-1)` of every earlier `m`.
pub fn kn_minus_edge_sequence(
    ns: &[usize],
    src: &dyn GapSource,
) -> Result<Vec<BoundReport>, BoundError> {
    let mut out = Vec::new();
    for pair in ns.windows(2) {
        let (prev, n) = (pair[0], pair[1]);
        let g = crate::families::Family::CompleteMinusEdge(n)
            .generate()
            .map_err(|_| BoundError::OrderTooSmall(n, 3))?;
        let value = src.gap(&g, &complete(2))?;
        out.push(
            BoundReport::check(
                "kn_minus_edge_window",
                Direction::StrictlyBelow,
                upper_bound_complete(prev)?,
                value,
            )
            .with_note(format!("n = {n} against window of n = {prev}")),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, path, Family};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn exact() -> ExactGaps {
        ExactGaps::default()
    }

    fn cycle(n: usize) -> Graph {
        Family::Cycle(n).generate().unwrap()
    }

    #[test]
    fn opt_lemma_formula() {
        assert_eq!(opt_lemma_max(6, 2), Ok(26));
        assert_eq!(opt_lemma_max(6, 4), Ok(26));
        assert_eq!(opt_lemma_max(5, 2), Err(BoundError::SumTooSmall(5)));
        assert_eq!(opt_lemma_max(8, 1), Err(BoundError::TooFewEntries(1)));
    }

    #[test]
    fn denominator_bounds_on_k4() {
        let f = Assignment::new(vec![0, 0, 0, 1]);
        let (lo, hi) = denominator_bounds(&complete(4), &complete(2), &f).unwrap();
        assert_eq!(lo.subject_value, Some(q(27, 1)));
        assert_eq!(lo.bound_value, Some(q(11, 1)));
        assert_eq!(hi.bound_value, Some(q(36, 1)));
        assert!(lo.holds && hi.holds);
    }

    #[test]
    fn denominator_bounds_on_hexagon() {
        // isolate vertex 0: 2 * (12 - 2) = 20 >= 11
        let f = Assignment::new(vec![1, 0, 0, 0, 0, 0]);
        let (lo, hi) = denominator_bounds(&cycle(6), &complete(2), &f).unwrap();
        assert_eq!(lo.subject_value, Some(q(20, 1)));
        assert!(lo.holds && hi.holds);
    }

    #[test]
    fn denominator_lower_on_star_has_small_slack() {
        let star = complete_bipartite(1, 5);
        let f = Assignment::new(vec![0, 1, 0, 0, 0, 0]);
        let (lo, _) = denominator_bounds(&star, &complete(2), &f).unwrap();
        // leaf (degree 1) against the rest (volume 9): 9, bound 9
        assert_eq!(lo.subject_value, Some(q(9, 1)));
        assert_eq!(lo.slack, Some(Rational::zero()));
        assert!(lo.holds);
    }

    #[test]
    fn denominator_bounds_preconditions() {
        let f = Assignment::new(vec![0, 0, 0]);
        assert_eq!(
            denominator_bounds(&path(3), &complete(2), &f).unwrap_err(),
            BoundError::ConstantAssignment
        );
        let f = Assignment::new(vec![0, 1, 0]);
        let (lo, _) = denominator_bounds(&path(3), &complete(2), &f).unwrap();
        assert_eq!(lo.status, Status::NotApplicable);
        let split = complete(2).disjoint_union(&complete(2));
        assert_eq!(
            denominator_bounds(&split, &complete(2), &Assignment::new(vec![0, 1, 0, 1]))
                .unwrap_err(),
            BoundError::Disconnected("G")
        );
    }

    #[test]
    fn sg_bound_is_tight_on_complete_graphs() {
        for n in 3..=6 {
            let r = lower_bound_sg(&complete(n), &complete(2), &exact()).unwrap();
            assert_eq!(r.bound_value, Some(q(n as i64, n as i64 - 1)));
            assert_eq!(r.slack, Some(Rational::zero()));
        }
    }

    #[test]
    fn sg_bound_on_path_and_square() {
        assert_eq!(s_g(&path(3)), Some(4));
        let r = lower_bound_sg(&path(3), &complete(2), &exact()).unwrap();
        assert_eq!(r.bound_value, Some(q(1, 5)));
        assert!(r.holds);
        assert!(
            lower_bound_sg(&cycle(4), &complete(2), &exact())
                .unwrap()
                .holds
        );
        let split = complete(2).disjoint_union(&complete(2));
        assert!(lower_bound_sg(&split, &complete(2), &exact()).is_err());
    }

    #[test]
    fn complete_upper_values() {
        assert_eq!(upper_bound_complete(2).unwrap(), q(2, 1));
        assert_eq!(upper_bound_complete(5).unwrap(), q(5, 4));
        assert!(upper_bound_complete(1).is_err());
    }

    #[test]
    fn naive_bounds() {
        let db = Family::Dumbbell(6).generate().unwrap();
        let r = naive_lower(&db, &complete(2), &exact()).unwrap();
        assert_eq!(r.bound_value, Some(q(2, 7)));
        assert!(r.holds);
        let rd = Family::RegularizedDumbbell(8).generate().unwrap();
        let r = naive_lower_regular(&rd, &complete(2), &exact()).unwrap();
        assert_eq!(r.bound_value, Some(q(2, 21)));
        assert!(r.holds);
        let r = naive_lower(&complete(4), &complete(2), &exact()).unwrap();
        assert_eq!(r.bound_value, Some(q(1, 3)));
        assert_eq!(r.subject_value, Some(q(4, 3)));
        assert_eq!(
            naive_lower_regular(&path(4), &complete(2), &exact()).unwrap_err(),
            BoundError::NotRegular("G")
        );
    }

    #[test]
    fn h_perturbation_on_k33() {
        let k4e = complete(4).remove_edge(0, 1).unwrap();
        let reports =
            h_perturbation_ratio_bounds(&complete_bipartite(3, 3), &complete(4), &k4e, &exact())
                .unwrap();
        let minus_edge: Vec<_> = reports
            .iter()
            .filter(|r| r.name.starts_with("h_ratio_minus_edge"))
            .collect();
        assert_eq!(minus_edge.len(), 2);
        assert_eq!(minus_edge[0].bound_value, Some(q(4, 1)));
        assert_eq!(minus_edge[1].bound_value, Some(q(1, 4)));
        assert!(reports.iter().all(|r| !r.failed()));
        let ratio = minus_edge[0].subject_value.clone().unwrap();
        assert!(ratio <= q(14, 15));
    }

    #[test]
    fn h_perturbation_on_square_with_path_and_triangle() {
        let reports =
            h_perturbation_ratio_bounds(&cycle(4), &path(3), &complete(3), &exact()).unwrap();
        let sg: Vec<_> = reports
            .iter()
            .filter(|r| r.name.starts_with("h_ratio_sg"))
            .collect();
        assert!(sg.iter().all(|r| r.holds));
        let na = reports
            .iter()
            .find(|r| r.name == "h_ratio_minus_edge_upper")
            .unwrap();
        assert_eq!(na.status, Status::NotApplicable);
        // reversed roles: K_3 minus an edge is P_3
        let reports =
            h_perturbation_ratio_bounds(&cycle(4), &complete(3), &path(3), &exact()).unwrap();
        let me = reports
            .iter()
            .find(|r| r.name == "h_ratio_minus_edge_upper")
            .unwrap();
        assert_eq!(me.status, Status::Checked);
        assert!(me.holds);
    }

    #[test]
    fn h_perturbation_complete_g_has_unit_ratio() {
        let reports =
            h_perturbation_ratio_bounds(&complete(4), &path(4), &complete(4), &exact()).unwrap();
        let up = &reports[0];
        assert_eq!(up.bound_value, Some(Rational::one()));
        assert_eq!(up.subject_value, Some(Rational::one()));
        assert!(up.holds);
        assert_eq!(
            h_perturbation_ratio_bounds(&complete(4), &path(3), &complete(4), &exact())
                .unwrap_err(),
            BoundError::VertexSetMismatch(3, 4)
        );
    }

    #[test]
    fn subgraph_bounds() {
        let g = Family::Dumbbell(6).generate().unwrap();
        for h in [path(3), complete(3), cycle(4), complete(4)] {
            let r = k2_extremality(&g, &h, &exact()).unwrap();
            assert!(r.holds);
        }
        let r = subgraph_bound(&g, &complete(4), &path(4), &exact()).unwrap();
        assert_eq!(
            r.bound_value.unwrap(),
            q(9, 1) * exact().gap(&g, &path(4)).unwrap()
        );
        assert!(r.holds);
        assert_eq!(
            subgraph_bound(&g, &path(4), &complete(3), &exact()).unwrap_err(),
            BoundError::NotSubgraph
        );
    }

    #[test]
    fn complete_chain_on_path() {
        let reports = complete_chain(&path(4), 6, &exact()).unwrap();
        assert_eq!(reports.len(), 4);
        assert!(reports.iter().all(|r| r.holds));
        assert_eq!(reports[1].name, "complete_chain_monotone");
        assert_eq!(reports[2].name, "complete_chain_equal");
    }

    #[test]
    fn edge_addition_on_k33() {
        let g = complete_bipartite(3, 3);
        let g_plus = g.add_edge(0, 1).unwrap();
        let (up, lo) = edge_addition_bounds(&g, &g_plus, &complete(2), &exact()).unwrap();
        assert_eq!(up.subject_value, Some(q(20, 21)));
        assert!(up.holds && lo.holds);
        assert_eq!(lo.note, "volume term dominates");
        assert_eq!(
            edge_addition_bounds(&g, &g, &complete(2), &exact()).unwrap_err(),
            BoundError::NotOneEdgeSupergraph
        );
    }

    #[test]
    fn edge_addition_on_pentagon_with_chord() {
        let g = cycle(5);
        let g_plus = g.add_edge(0, 2).unwrap();
        for h in [complete(2), path(3)] {
            let (up, lo) = edge_addition_bounds(&g, &g_plus, &h, &exact()).unwrap();
            assert!(up.holds && lo.holds);
        }
    }

    #[test]
    fn edge_addition_lower_term_selection() {
        // D_H = 1: (v-1)/(3v) > 1/4 once v > 4
        let (a, b) = edge_addition_lower_terms(10, 1);
        assert!(a > b);
        assert_eq!(a, q(9, 30));
        // D_H = 2: (v-1)/(9v+3) < 1/4
        let (a, b) = edge_addition_lower_terms(10, 2);
        assert!(a < b);
        let (_, lo) = edge_addition_bounds(
            &cycle(5),
            &cycle(5).add_edge(0, 2).unwrap(),
            &path(3),
            &exact(),
        )
        .unwrap();
        assert_eq!(lo.note, "1/4 term dominates");
    }

    #[test]
    fn regular_supergraph_examples() {
        let g = complete_bipartite(4, 4);
        let g_plus = Family::BipartitePlusMatching(4).generate().unwrap();
        let (up, lo) = regular_supergraph_bounds(&g, &g_plus, &complete(2), &exact()).unwrap();
        assert!(up.holds && lo.holds);
        assert_eq!(lo.bound_value, Some(q(4, 5)));

        let c6 = cycle(6);
        let c6_plus = c6
            .add_edge(0, 3)
            .unwrap()
            .add_edge(1, 4)
            .unwrap()
            .add_edge(2, 5)
            .unwrap();
        let (up, lo) = regular_supergraph_bounds(&c6, &c6_plus, &complete(2), &exact()).unwrap();
        assert!(up.holds && lo.holds);

        let k6_minus_pm = complete(6)
            .remove_edge(0, 1)
            .unwrap()
            .remove_edge(2, 3)
            .unwrap()
            .remove_edge(4, 5)
            .unwrap();
        let (up, lo) =
            regular_supergraph_bounds(&k6_minus_pm, &complete(6), &complete(2), &exact()).unwrap();
        assert!(up.holds && lo.holds);

        assert_eq!(
            regular_supergraph_bounds(&c6, &complete(6), &complete(2), &exact()).unwrap_err(),
            BoundError::NotRegularSupergraph
        );
    }

    #[test]
    fn bipartite_identity_cases() {
        let (a, b) = bipartite_identities(2, 3, 3, &exact()).unwrap();
        assert!(a.holds && b.holds);
        assert_eq!(a.status, Status::Checked);
        let (a, _) = bipartite_identities(1, 4, 2, &exact()).unwrap();
        assert_eq!(a.status, Status::Informational);
        assert_eq!(a.subject_value, Some(q(4, 3)));
        assert!(!a.failed());
    }

    #[test]
    fn kn_minus_edge_windows() {
        let (lo, up) = kn_minus_edge_check(3, &exact()).unwrap();
        assert_eq!(lo.subject_value, Some(q(4, 3)));
        assert!(lo.holds);
        // K_3 - e = P_3 sits at 4/3 < 3/2
        assert!(up.holds);
        for n in [5, 8] {
            let (lo, up) = kn_minus_edge_check(n, &exact()).unwrap();
            assert!(lo.holds && up.holds, "n = {n}");
        }
        let seq = kn_minus_edge_sequence(&[5, 8], &exact()).unwrap();
        assert!(seq[0].holds);
        assert!(kn_minus_edge_check(2, &exact()).is_err());
    }

    #[test]
    fn positivity_and_equality_checks() {
        let split = complete(3).disjoint_union(&complete(2));
        let r = positivity_iff_connected(&split, &complete(2), &exact()).unwrap();
        assert!(r.holds);
        let r = positivity_iff_connected(&path(4), &complete(3), &exact()).unwrap();
        assert!(r.holds);
        let iso = complete(3).disjoint_union(&Graph::empty(1));
        assert_eq!(
            positivity_iff_connected(&iso, &complete(2), &exact())
                .unwrap()
                .status,
            Status::NotApplicable
        );
        assert!(
            equality_iff_complete(&complete(5), &complete(3), &exact())
                .unwrap()
                .holds
        );
        assert!(
            equality_iff_complete(&path(5), &complete(3), &exact())
                .unwrap()
                .holds
        );
    }
}
