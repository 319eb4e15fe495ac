//! Command-line interface.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use metric_gap_core::embedding::{
    bourgain_embed, distortion, project_line, DistortionReport, EmbeddingError,
};
use metric_gap_core::exact_gap::DEFAULT_BUDGET;
use metric_gap_core::spectral::lambda_r;
use metric_gap_core::{apsp, lambda_exact, Assignment, GapError, GapOptions, Rational};

use crate::campaign::{run_campaign, CampaignOptions, GapCache};
use crate::corpus::{CorpusSpec, NamedGraph};
use crate::input::{parse_graph, parse_graph_list};
use crate::search::{self, Documented, SearchReport};
use crate::worked::{self, worked_examples};

pub const BUDGET_ENV: &str = "METRIC_GAP_BUDGET";

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    CheckFailed = 1,
    Input = 2,
    Budget = 3,
    Undefined = 4,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> Self {
        ExitCode::from(e as u8)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "metric-gap",
    version,
    about = "Exact nonlinear spectral gaps of graphs into graph metrics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact lambda(G, H) with a minimizing assignment.
    Compute(ComputeArgs),
    /// Run every applicable bound over a corpus.
    Verify(VerifyArgs),
    /// Look for gaps that move non-monotonically.
    SearchMonotonic(SearchArgs),
    /// Random-subset embedding of a graph metric and its distortion.
    Embed(EmbedArgs),
    /// Recompute the published worked examples.
    Examples(OutputArgs),
    /// Normalized Laplacian spectrum and lambda(G, R).
    Spectrum(SpectrumArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Same as `--format csv`.
    #[arg(long)]
    pub csv: bool,
}

impl OutputArgs {
    fn csv(&self) -> bool {
        self.csv || self.format == Format::Csv
    }
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Maximum number of assignments; overrides METRIC_GAP_BUDGET.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Disable automorphism-orbit pruning.
    #[arg(long)]
    pub no_pruning: bool,
}

impl BudgetArgs {
    fn options(&self) -> Result<GapOptions, String> {
        let budget = match self.budget {
            Some(b) => b,
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| format!("{BUDGET_ENV}={v} is not a nonnegative integer"))?,
                Err(_) => DEFAULT_BUDGET,
            },
        };
        let opts = GapOptions::default().with_budget(budget);
        Ok(if self.no_pruning {
            opts.without_pruning()
        } else {
            opts
        })
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Source graph: graph6, JSON edge list, `family:...`, shorthand or `@file`.
    #[arg(long)]
    pub g: String,
    /// Metric graph, same forms as --g.
    #[arg(long)]
    pub h: String,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// All labeled graphs on 2..=N vertices.
    #[arg(long, value_name = "N")]
    pub exhaustive: Option<usize>,
    /// Keep disconnected graphs in the exhaustive corpus.
    #[arg(long)]
    pub include_disconnected: bool,
    /// Comma-separated families (`name:params`), or `worked` for the worked-example set.
    #[arg(long, value_name = "LIST")]
    pub families: Option<String>,
    /// Random G(n, p) corpus.
    #[arg(long, num_args = 3, value_names = ["N", "COUNT", "P"])]
    pub random: Option<Vec<String>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated metric graphs.
    #[arg(long, default_value = "K2")]
    pub h: String,
    /// Random assignments per (G, H) for the denominator bounds.
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
    /// Record per-check runtime.
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Documented corpus name, or `documented` for all of them.
    #[arg(long, default_value = "documented")]
    pub corpus: String,
    /// Search these graphs instead (edge additions and apex).
    #[arg(long, value_name = "LIST")]
    pub g: Option<String>,
    #[arg(long, default_value = "K2")]
    pub h: String,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Graph whose shortest-path metric is embedded.
    #[arg(long)]
    pub x: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Summarize seeds `seed..seed+N` instead of emitting one embedding.
    #[arg(long)]
    pub seeds: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub g: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct BudgetBody {
    error: &'static str,
    required: String,
    budget: u64,
    upper_bound: Option<Rational>,
}

/// A failed command: exit code, machine-readable body and message.
struct Failure {
    exit: Exit,
    body: Option<String>,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            exit: Exit::Input,
            body: None,
            message: message.to_string(),
        }
    }
}

impl From<GapError> for Failure {
    fn from(e: GapError) -> Self {
        let message = e.to_string();
        match e {
            GapError::BudgetExceeded {
                required,
                budget,
                upper_bound,
            } => Failure {
                exit: Exit::Budget,
                body: serde_json::to_string(&BudgetBody {
                    error: "budget_exceeded",
                    required: required.to_string(),
                    budget,
                    upper_bound,
                })
                .ok(),
                message,
            },
            GapError::UndefinedGap => Failure {
                exit: Exit::Undefined,
                body: Some(r#"{"error":"undefined_gap"}"#.to_string()),
                message,
            },
            _ => Failure::input(message),
        }
    }
}

impl From<EmbeddingError> for Failure {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::Gap(g) => g.into(),
            other => Failure::input(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::input(e)
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

#[derive(Serialize)]
struct ComputeOutput<'a> {
    lambda: &'a Rational,
    witness: &'a Assignment,
    evaluated: u64,
    skipped_zero_denominator: u64,
}

fn compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<Exit, Failure> {
    let g = parse_graph(&args.g).map_err(Failure::input)?;
    let h = parse_graph(&args.h).map_err(Failure::input)?;
    let opts = args.budget.options().map_err(Failure::input)?;
    let r = lambda_exact(&g, &h, &opts)?;
    if args.output.csv() {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["lambda", "witness", "evaluated", "skipped_zero_denominator"])?;
        let witness: Vec<String> = r.witness.image().iter().map(ToString::to_string).collect();
        w.write_record([
            r.value.to_string(),
            witness.join(" "),
            r.assignments_evaluated.to_string(),
            r.assignments_skipped_zero_denominator.to_string(),
        ])?;
        w.flush()?;
    } else {
        emit_json(
            out,
            &ComputeOutput {
                lambda: &r.value,
                witness: &r.witness,
                evaluated: r.assignments_evaluated,
                skipped_zero_denominator: r.assignments_skipped_zero_denominator,
            },
        )?;
    }
    Ok(Exit::Pass)
}

fn verify_corpus(args: &VerifyArgs) -> Result<Vec<NamedGraph>, Failure> {
    let mut specs = Vec::new();
    if let Some(n_max) = args.exhaustive {
        specs.push(CorpusSpec::Exhaustive {
            n_max,
            connected_only: !args.include_disconnected,
        });
    }
    if let Some(list) = &args.families {
        specs.push(CorpusSpec::Families {
            names: list
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
        });
    }
    if let Some(r) = &args.random {
        let bad = |what: &str| Failure::input(format!("--random: bad {what}"));
        specs.push(CorpusSpec::Random {
            n: r[0].parse().map_err(|_| bad("N"))?,
            count: r[1].parse().map_err(|_| bad("COUNT"))?,
            edge_prob: r[2].parse().map_err(|_| bad("P"))?,
            seed: args.seed,
        });
    }
    if specs.is_empty() {
        return Err(Failure::input(
            "verify needs --exhaustive, --families or --random",
        ));
    }
    let mut corpus = Vec::new();
    for spec in specs {
        corpus.extend(spec.graphs().map_err(Failure::input)?);
    }
    Ok(corpus)
}

fn metric_list(arg: &str) -> Result<Vec<NamedGraph>, Failure> {
    Ok(parse_graph_list(arg)
        .map_err(Failure::input)?
        .into_iter()
        .map(|(id, g)| NamedGraph::new(id, g))
        .collect())
}

fn verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit, Failure> {
    let corpus = verify_corpus(args)?;
    let hs = metric_list(&args.h)?;
    let opts = CampaignOptions {
        samples: args.samples,
        seed: args.seed,
        timing: args.timing,
        gap: GapOptions {
            parallel: false,
            ..args.budget.options().map_err(Failure::input)?
        },
        ..CampaignOptions::default()
    };
    let report = run_campaign(&corpus, &hs, &opts);
    if args.output.csv() {
        report.write_csv(&mut *out)?;
    } else {
        emit_json(out, &report)?;
    }
    for f in report.failures() {
        writeln!(err, "FAILED {} g={} h={} {}", f.check, f.g, f.h, f.detail)?;
    }
    Ok(if report.summary.failed > 0 {
        Exit::CheckFailed
    } else if report.summary.errors > 0 {
        Exit::Budget
    } else {
        Exit::Pass
    })
}

fn search_monotonic(args: &SearchArgs, out: &mut dyn Write) -> Result<Exit, Failure> {
    let src = GapCache::new(args.budget.options().map_err(Failure::input)?);
    let report: SearchReport = match &args.g {
        Some(list) => {
            let corpus = metric_list(list)?;
            let h = metric_list(&args.h)?
                .into_iter()
                .next()
                .ok_or_else(|| Failure::input("--h is empty"))?;
            let mut r = search::edge_addition_witnesses(&corpus, &h, &src)?;
            r.extend(search::apex_witnesses(&corpus, &h, &src)?);
            r
        }
        None if args.corpus == "documented" => search::documented(&src)?,
        None => Documented::from_name(&args.corpus)
            .ok_or_else(|| Failure::input(format!("unknown corpus `{}`", args.corpus)))?
            .run(&src)?,
    };
    if args.output.csv() {
        report.write_csv(&mut *out)?;
    } else {
        emit_json(out, &report)?;
    }
    Ok(Exit::Pass)
}

#[derive(Serialize)]
struct EmbedOutput<'a> {
    k: usize,
    dim: usize,
    scales: usize,
    reps: usize,
    seed: u64,
    points: &'a [Vec<f64>],
    projection: Vec<f64>,
    distortion: DistortionReport,
}

/// `null` stands for an infinite value.
#[derive(Serialize)]
struct Spread {
    min: Option<f64>,
    median: Option<f64>,
    max: Option<f64>,
}

impl Spread {
    fn of(mut xs: Vec<f64>) -> Spread {
        xs.sort_by(f64::total_cmp);
        let finite = |x: f64| x.is_finite().then_some(x);
        let median = if xs.len() % 2 == 1 {
            xs[xs.len() / 2]
        } else {
            (xs[xs.len() / 2 - 1] + xs[xs.len() / 2]) / 2.0
        };
        Spread {
            min: finite(xs[0]),
            median: finite(median),
            max: finite(xs[xs.len() - 1]),
        }
    }
}

#[derive(Serialize)]
struct EmbedSummary {
    k: usize,
    dim: usize,
    first_seed: u64,
    seeds: u64,
    max_l1_expansion: f64,
    l1_distortion: Spread,
    line_distortion: Spread,
}

fn embed(args: &EmbedArgs, out: &mut dyn Write) -> Result<Exit, Failure> {
    let x = parse_graph(&args.x).map_err(Failure::input)?;
    let dist = apsp(&x);
    match args.seeds {
        None => {
            let e = bourgain_embed(&dist, args.seed)?;
            let report = distortion(&dist, &e)?;
            emit_json(
                out,
                &EmbedOutput {
                    k: dist.k(),
                    dim: e.dim,
                    scales: e.scales,
                    reps: e.reps,
                    seed: e.seed,
                    points: &e.points,
                    projection: project_line(&e),
                    distortion: report,
                },
            )?;
        }
        Some(0) => return Err(Failure::input("--seeds must be positive")),
        Some(count) => {
            let mut reports = Vec::new();
            let mut dim = 0;
            for seed in args.seed..args.seed + count {
                let e = bourgain_embed(&dist, seed)?;
                dim = e.dim;
                reports.push(distortion(&dist, &e)?);
            }
            emit_json(
                out,
                &EmbedSummary {
                    k: dist.k(),
                    dim,
                    first_seed: args.seed,
                    seeds: count,
                    max_l1_expansion: reports.iter().map(|r| r.l1.expansion).fold(0.0, f64::max),
                    l1_distortion: Spread::of(reports.iter().map(|r| r.l1.distortion).collect()),
                    line_distortion: Spread::of(
                        reports.iter().map(|r| r.line.distortion).collect(),
                    ),
                },
            )?;
        }
    }
    Ok(Exit::Pass)
}

fn examples(args: &OutputArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit, Failure> {
    let rows = worked_examples(&GapCache::new(GapOptions::default()))?;
    if args.csv() {
        worked::write_csv(&rows, &mut *out)?;
    } else {
        emit_json(out, &rows)?;
    }
    let mut exit = Exit::Pass;
    for r in rows.iter().filter(|r| !r.matches) {
        writeln!(
            err,
            "MISMATCH {}: expected {} {}, got {}",
            r.name,
            r.relation.as_str(),
            r.expected,
            r.computed
        )?;
        exit = Exit::CheckFailed;
    }
    Ok(exit)
}

fn spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> Result<Exit, Failure> {
    let g = parse_graph(&args.g).map_err(Failure::input)?;
    let s = lambda_r(&g).map_err(Failure::input)?;
    if args.output.csv() {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["index", "eigenvalue"])?;
        for (i, v) in s.eigenvalues.iter().enumerate() {
            w.write_record([i.to_string(), v.to_string()])?;
        }
        w.flush()?;
    } else {
        emit_json(out, &s)?;
    }
    Ok(Exit::Pass)
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run_with(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let result = match &cli.command {
        Command::Compute(a) => compute(a, out),
        Command::Verify(a) => verify(a, out, err),
        Command::SearchMonotonic(a) => search_monotonic(a, out),
        Command::Embed(a) => embed(a, out),
        Command::Examples(a) => examples(a, out, err),
        Command::Spectrum(a) => spectrum(a, out),
    };
    match result {
        Ok(exit) => exit,
        Err(f) => {
            if let Some(body) = f.body {
                let _ = writeln!(out, "{body}");
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.exit
        }
    }
}

pub fn run(cli: &Cli) -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(cli, &mut stdout.lock(), &mut stderr.lock()).into()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Exit, String, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("metric-gap").chain(args.iter().copied())).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let exit = run_with(&cli, &mut out, &mut err);
        (
            exit,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn compute_path() {
        let (exit, out, _) = run_args(&[
            "compute",
            "--g",
            "family:path:3",
            "--h",
            "family:complete:2",
        ]);
        assert_eq!(exit, Exit::Pass);
        assert!(
            out.starts_with(r#"{"lambda":{"num":"4","den":"3"},"witness":["#),
            "{out}"
        );
    }

    #[test]
    fn budget_flag_overrides() {
        let (exit, out, err) = run_args(&["compute", "--g", "K6", "--h", "K3", "--budget", "10"]);
        assert_eq!(exit, Exit::Budget);
        assert!(out.contains(r#""error":"budget_exceeded""#));
        assert!(out.contains(r#""required":"729""#));
        assert!(err.starts_with("error: "));
    }

    #[test]
    fn undefined_and_bad_input() {
        assert_eq!(
            run_args(&["compute", "--g", "D??", "--h", "K2"]).0,
            Exit::Undefined
        );
        assert_eq!(
            run_args(&["compute", "--g", "D?", "--h", "K2"]).0,
            Exit::Input
        );
        assert_eq!(run_args(&["verify", "--h", "K2"]).0, Exit::Input);
        assert_eq!(
            run_args(&["search-monotonic", "--corpus", "nope"]).0,
            Exit::Input
        );
    }

    #[test]
    fn spread_handles_infinity() {
        let s = Spread::of(vec![3.0, f64::INFINITY, 1.0]);
        assert_eq!((s.min, s.median, s.max), (Some(1.0), Some(3.0), None));
        let s = Spread::of(vec![2.0, 4.0]);
        assert_eq!(s.median, Some(3.0));
    }
}
