//! Command-line definitions and command implementations.
//!
//! Every command that writes a file also writes `<out>.manifest.json`, which
//! records the arguments needed to reproduce it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use pa_core::bounds::{self, BandCheckSpec, BoundReport};
use pa_core::clique::{self, FinderConfig, FinderMode};
use pa_core::exact_dist::{conditional_dist, vertex_dist};
use pa_core::pmf::DEFAULT_EXACT_CAP;
use pa_core::process::generate;
use pa_core::rng::derive_seed;
use pa_core::urn::{self, ReplacementMatrix, UrnPmf, UrnSpec};
use pa_core::{ArithmeticMode, Pmf, ProcessParams};
use serde::Serialize;

use crate::exec::Parallel;
use crate::figure::{self, Panel};
use crate::formats::{self, WitnessJson};
use crate::manifest::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "pa-lab", version, about = "Preferential attachment graphs, degree laws and urns")]
pub struct Cli {
    /// Worker threads for Monte Carlo trials (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Exit with status 2 when a bound or witness check fails.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph and write it as an edge list.
    Gen(GenArgs),
    /// Exact or float law of a vertex degree.
    Dist(DistArgs),
    /// Urn laws: enumeration, closed forms and simulation.
    Urn(UrnArgs),
    /// Tail and concentration bound checks.
    Bounds(BoundsArgs),
    /// Subdivided clique witnesses.
    Clique(CliqueArgs),
    /// Data for the degree distribution panels.
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    /// Exact when n ≤ cap, float otherwise.
    Auto,
    Exact,
    Float,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModeOpts {
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Largest n accepted in exact mode.
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    pub cap: u64,
}

impl ModeOpts {
    pub fn resolve(&self, n: u64) -> ArithmeticMode {
        match self.mode {
            ModeArg::Exact => ArithmeticMode::Exact { cap: self.cap },
            ModeArg::Float => ArithmeticMode::Float,
            ModeArg::Auto if n <= self.cap => ArithmeticMode::Exact { cap: self.cap },
            ModeArg::Auto => ArithmeticMode::Float,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, env = "PA_LAB_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DistArgs {
    /// Birth time of the vertex, or the conditioning time with `--d`.
    #[arg(long)]
    pub t: u64,
    #[arg(long)]
    pub n: u64,
    /// Condition on `D(t) = d`.
    #[arg(long)]
    pub d: Option<u64>,
    #[command(flatten)]
    pub mode: ModeOpts,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UrnFormula {
    /// Dense enumeration of any balanced additive urn.
    Enumerate,
    /// `[1,1,0,2]` from `(1, 0)`.
    EasyCase,
    /// `[1,1,0,2]` from `(a0, 0)`.
    ArbitraryA0,
    /// `[2,0,0,2]`.
    Polya,
    /// Alternating sum for triangular additive urns (exact only).
    General,
    /// Non-alternating split sum for `[1,1,0,2]`.
    Nonalternating,
    /// Degree of the vertex born at `t`, at time `n`.
    Degree,
    /// Degree at `n` given `D(t) = d`.
    ConditionalDegree,
    /// Empirical frequencies of simulated urns.
    Simulate,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct UrnArgs {
    #[arg(value_enum)]
    pub formula: UrnFormula,
    #[arg(long)]
    pub n: u64,
    /// Replacement matrix `α,β,γ,δ` (default `1,1,0,2`, or `2,0,0,2` for polya).
    #[arg(long, value_parser = parse_matrix)]
    #[serde(serialize_with = "serialize_display_opt")]
    pub matrix: Option<ReplacementMatrix>,
    #[arg(long, default_value_t = 1)]
    pub a0: u64,
    #[arg(long, default_value_t = 0)]
    pub b0: u64,
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, env = "PA_LAB_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub mode: ModeOpts,
    #[arg(long)]
    pub out: PathBuf,
}

fn serialize_display_opt<S: serde::Serializer, T: std::fmt::Display>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

pub fn parse_matrix(s: &str) -> Result<ReplacementMatrix, String> {
    let parts: Vec<i64> = s
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| format!("bad matrix entry {p:?}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b, c, d] => Ok(ReplacementMatrix::new(a, b, c, d)),
        _ => Err(format!("matrix needs four entries, found {}", parts.len())),
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(subcommand)]
    pub check: BoundsCheck,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundsCheck {
    /// `P[d_1^n(v_1) > c√n]` against `e^{-c²/4}`.
    Tail {
        #[arg(long, value_delimiter = ',', required = true)]
        c: Vec<f64>,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        mode: ModeOpts,
        #[arg(long)]
        out: PathBuf,
    },
    /// `P[d_1^n(v_1) ≤ ε√n]` against `1/n`.
    SmallDegree {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        mode: ModeOpts,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo mean of `d_1^n(v_1)` against its exact value.
    Mean {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, env = "PA_LAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Short-term lower deviation given `D(t) = d0`.
    ShortTermLower(ShortTermArgs),
    /// Short-term upper deviation given `D(t) = d0`.
    ShortTermUpper(ShortTermArgs),
    /// Frequency of staying in the `(1±ε)√(n/t)·d0` band up to the horizon.
    Band {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        d0: Vec<u64>,
        #[arg(long)]
        horizon: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, env = "PA_LAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ShortTermArgs {
    #[arg(long)]
    pub t: u64,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub d0: Vec<u64>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, env = "PA_LAB_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CliqueArgs {
    #[command(subcommand)]
    pub action: CliqueAction,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FinderArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    #[arg(long)]
    pub n: u64,
    /// Principals come from the first `t1` vertices (default k²).
    #[arg(long)]
    pub t1: Option<u64>,
    /// Principal degrees are compared at `t2` (default k⁴).
    #[arg(long)]
    pub t2: Option<u64>,
    /// Accept connectors through any two of their edges (greedy mode).
    #[arg(long)]
    pub relaxed: bool,
    #[arg(long, env = "PA_LAB_SEED", default_value_t = 0)]
    pub seed: u64,
}

impl FinderArgs {
    fn config(&self) -> FinderConfig {
        let mut cfg = FinderConfig::new(self.k, self.n);
        cfg.t1 = self.t1.unwrap_or(cfg.t1);
        cfg.t2 = self.t2.unwrap_or(cfg.t2);
        if self.relaxed {
            cfg.mode = FinderMode::Greedy;
            cfg.strict_first_edges = false;
        }
        cfg
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CliqueAction {
    /// Run the online finder on one seeded graph.
    Find {
        #[command(flatten)]
        finder: FinderArgs,
        /// Also write the graph (up to the stopping time) as an edge list.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Success frequency of the online finder over seeded runs.
    Success {
        #[command(flatten)]
        finder: FinderArgs,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Largest witness found greedily in an edge-list graph.
    Greedy {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a witness file against an edge-list graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(Panel))]
    #[serde(serialize_with = "serialize_panel")]
    pub which: Panel,
    #[arg(long)]
    pub out: PathBuf,
}

fn serialize_panel<S: serde::Serializer>(p: &Panel, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match p {
        Panel::Left => "left",
        Panel::Right => "right",
    })
}

/// What a command produced.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub artifacts: Vec<PathBuf>,
    /// A bound or witness check failed.
    pub violation: bool,
}

/// Exit status: 0 on completion; 2 for a failed check under `--strict`.
pub fn exit_code(cli: &Cli, outcome: &Outcome) -> u8 {
    if cli.strict && outcome.violation {
        2
    } else {
        0
    }
}

/// Parses `argv` (without the program name) and runs it.
pub fn run_args<I, S>(argv: I) -> anyhow::Result<Outcome>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(std::iter::once("pa-lab".to_string()).chain(argv.iter().cloned()))?;
    execute(&cli, &argv)
}

pub fn execute(cli: &Cli, argv: &[String]) -> anyhow::Result<Outcome> {
    let ctx = RunContext { argv: argv.to_vec(), jobs: cli.jobs };
    match &cli.command {
        Command::Gen(a) => cmd_gen(&ctx, a),
        Command::Dist(a) => cmd_dist(&ctx, a),
        Command::Urn(a) => cmd_urn(&ctx, a),
        Command::Bounds(a) => cmd_bounds(&ctx, &a.check),
        Command::Clique(a) => cmd_clique(&ctx, &a.action),
        Command::Figure(a) => cmd_figure(&ctx, a),
    }
}

struct RunContext {
    argv: Vec<String>,
    jobs: Option<usize>,
}

impl RunContext {
    fn executor(&self) -> anyhow::Result<Parallel> {
        Parallel::new(self.jobs)
    }

    /// Writes `files` and a manifest next to the first of them.
    fn emit<P: Serialize>(&self, command: &str, params: &P, seed: u64, files: &[(&Path, String)]) -> anyhow::Result<Outcome> {
        let mut manifest = RunManifest::new(command, flatten_params(params)?, seed, self.argv.clone());
        let mut artifacts = Vec::new();
        for (path, text) in files {
            formats::write_text(path, text)?;
            info!("wrote {}", path.display());
            manifest.artifacts.push(path.display().to_string());
            artifacts.push(path.to_path_buf());
        }
        let primary = files.first().map(|(p, _)| *p).context("command produced no files")?;
        artifacts.push(manifest.write(primary)?);
        Ok(Outcome { artifacts, violation: false })
    }
}

fn flatten_params<P: Serialize>(params: &P) -> anyhow::Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    flatten_into(&mut out, "", serde_json::to_value(params)?);
    Ok(out)
}

fn flatten_into(out: &mut BTreeMap<String, String>, prefix: &str, value: serde_json::Value) {
    use serde_json::Value;
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k } else { format!("{prefix}.{k}") };
                flatten_into(out, &key, v);
            }
        }
        Value::Null => {}
        Value::String(s) => {
            out.insert(prefix.to_string(), s);
        }
        other => {
            out.insert(prefix.to_string(), other.to_string());
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

// ---------------------------------------------------------------------------
// gen, dist, figure

fn cmd_gen(ctx: &RunContext, a: &GenArgs) -> anyhow::Result<Outcome> {
    let g = generate(a.n, ProcessParams::new(a.m, a.seed)?)?;
    ctx.emit("gen", a, a.seed, &[(&a.out, formats::edge_list(&g, a.seed))])
}

fn cmd_dist(ctx: &RunContext, a: &DistArgs) -> anyhow::Result<Outcome> {
    let mode = a.mode.resolve(a.n);
    let dist = match a.d {
        Some(d) => conditional_dist(a.t, d, a.n, mode)?,
        None => vertex_dist(a.t, a.n, mode)?,
    };
    if dist.clamped_mass > 0.0 {
        info!("float DP clamped a total mass of {:e}", dist.clamped_mass);
    }
    ctx.emit("dist", a, 0, &[(&a.out, formats::degree_csv(&dist.pmf))])
}

pub fn cmd_figure_table(which: Panel) -> anyhow::Result<figure::FigureTable> {
    Ok(figure::panel(which)?)
}

fn cmd_figure(ctx: &RunContext, a: &FigureArgs) -> anyhow::Result<Outcome> {
    let table = cmd_figure_table(a.which)?;
    ctx.emit("figure", a, 0, &[(&a.out, table.to_csv())])
}

// ---------------------------------------------------------------------------
// urn

fn cmd_urn(ctx: &RunContext, a: &UrnArgs) -> anyhow::Result<Outcome> {
    let mode = a.mode.resolve(a.n);
    let default_matrix = match a.formula {
        UrnFormula::Polya => ReplacementMatrix::POLYA,
        _ => ReplacementMatrix::DEGREE,
    };
    let matrix = a.matrix.unwrap_or(default_matrix);
    let require = |expected: ReplacementMatrix| -> anyhow::Result<()> {
        if matrix != expected {
            bail!("formula {:?} needs matrix {expected}, got {matrix}", a.formula);
        }
        Ok(())
    };
    let need = |v: Option<u64>, name: &str| v.with_context(|| format!("formula {:?} needs --{name}", a.formula));
    let law: UrnPmf = match a.formula {
        UrnFormula::Enumerate => {
            if !mode.is_exact() {
                bail!("enumeration is exact only");
            }
            urn::enumerate_exact(&UrnSpec::new(matrix, a.a0, a.b0)?, a.n)?
        }
        UrnFormula::EasyCase => {
            require(ReplacementMatrix::DEGREE)?;
            if (a.a0, a.b0) != (1, 0) {
                bail!("easy-case needs a0 = 1 and b0 = 0");
            }
            urn::closed_form::easy_case_law(a.n, mode)?
        }
        UrnFormula::ArbitraryA0 => {
            require(ReplacementMatrix::DEGREE)?;
            if a.b0 != 0 {
                bail!("arbitrary-a0 needs b0 = 0");
            }
            urn::closed_form::arbitrary_a0_law(a.n, a.a0, mode)?
        }
        UrnFormula::Polya => {
            require(ReplacementMatrix::POLYA)?;
            urn::closed_form::polya_2002_law(a.n, a.a0, a.b0, mode)?
        }
        UrnFormula::General => {
            if !mode.is_exact() {
                bail!("the alternating sum is evaluated exactly only (use --mode=exact)");
            }
            urn::GeneralCase::new(&UrnSpec::new(matrix, a.a0, a.b0)?, a.n)?.law()
        }
        UrnFormula::Nonalternating => {
            require(ReplacementMatrix::DEGREE)?;
            urn::Nonalternating::new(a.n, a.a0, a.b0, mode)?.law()?
        }
        UrnFormula::Degree => urn::degree_law(a.n, need(a.t, "t")?, mode)?,
        UrnFormula::ConditionalDegree => urn::conditional_degree_law(a.n, need(a.t, "t")?, need(a.d, "d")?, mode)?,
        UrnFormula::Simulate => simulate_law(&UrnSpec::new(matrix, a.a0, a.b0)?, a.n, a.trials, a.seed)?,
    };
    let label = serde_json::to_value(a.formula)?;
    let mode = if a.formula == UrnFormula::Simulate { ArithmeticMode::Float } else { mode };
    let text = formats::urn_csv(&law, mode, label.as_str().unwrap_or_default());
    ctx.emit("urn", a, a.seed, &[(&a.out, text)])
}

/// Empirical law of `A_n` over `trials` seeded runs.
pub fn simulate_law(spec: &UrnSpec, n: u64, trials: u64, seed: u64) -> anyhow::Result<UrnPmf> {
    if trials == 0 {
        bail!("trials must be positive");
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for i in 0..trials {
        let (a, _) = urn::simulate(spec, n, derive_seed(seed, i))?;
        *counts.entry(a).or_default() += 1;
    }
    let lo = *counts.keys().next().expect("at least one trial");
    let hi = *counts.keys().next_back().expect("at least one trial");
    let weights = (lo..=hi).map(|k| counts.get(&k).copied().unwrap_or(0) as f64 / trials as f64).collect();
    Ok(UrnPmf { spec: *spec, n, pmf: Pmf::from_floats(lo, weights) })
}

// ---------------------------------------------------------------------------
// bounds

#[derive(Debug, Serialize)]
struct MeanReport {
    n: u32,
    trials: u64,
    mean: f64,
    standard_error: f64,
    exact_mean: f64,
    z_score: f64,
    within_4_se: bool,
}

fn cmd_bounds(ctx: &RunContext, check: &BoundsCheck) -> anyhow::Result<Outcome> {
    let exec = ctx.executor()?;
    let (reports, out, seed): (Vec<BoundReport>, &Path, u64) = match check {
        BoundsCheck::Tail { c, n, mode, out } => (bounds::first_vertex_tails(c, *n, mode.resolve(*n))?, out, 0),
        BoundsCheck::SmallDegree { n, eps, mode, out } => {
            let top = n.iter().copied().max().unwrap_or(0);
            let (reports, first) = bounds::small_degree_scan(n, *eps, mode.resolve(top))?;
            match first {
                Some(n0) => info!("bound first holds at n = {n0}"),
                None => info!("bound holds at none of the requested n"),
            }
            (reports, out, 0)
        }
        BoundsCheck::Mean { n, trials, seed, out } => {
            let est = bounds::first_vertex_mean_mc(*n, *trials, *seed, &exec)?;
            let exact = bounds::mean_oracle(*n as u64)?;
            let z = (est.mean - exact) / est.standard_error;
            let report = MeanReport {
                n: *n,
                trials: *trials,
                mean: est.mean,
                standard_error: est.standard_error,
                exact_mean: exact,
                z_score: z,
                within_4_se: z.abs() <= 4.0,
            };
            let mut outcome = ctx.emit("bounds", check, *seed, &[(out, json(&report)?)])?;
            outcome.violation = !report.within_4_se;
            return Ok(outcome);
        }
        BoundsCheck::ShortTermLower(a) | BoundsCheck::ShortTermUpper(a) => {
            let upper = matches!(check, BoundsCheck::ShortTermUpper(_));
            let reports = a
                .d0
                .iter()
                .enumerate()
                .map(|(j, &d0)| {
                    let seed = derive_seed(a.seed, j as u64);
                    if upper {
                        bounds::short_term_upper(a.t, a.delta, d0, a.trials, seed, &exec)
                    } else {
                        bounds::short_term_lower(a.t, a.delta, d0, a.trials, seed, &exec)
                    }
                })
                .collect::<pa_core::Result<Vec<_>>>()?;
            (reports, &a.out, a.seed)
        }
        BoundsCheck::Band { t, eps, d0, horizon, trials, seed, out } => {
            let reports = if let [d0] = d0[..] {
                let spec = BandCheckSpec { t: *t, epsilon: *eps, d0, horizon: *horizon, trials: *trials, seed: *seed };
                vec![bounds::band_check(&spec, &exec)?]
            } else {
                let trend = bounds::band_trend(*t, *eps, d0, *horizon, *trials, *seed, &exec)?;
                info!("in-band frequency strictly increasing: {}; 99% intervals separated: {}", trend.strictly_increasing, trend.separated);
                trend.reports
            };
            (reports, out, *seed)
        }
    };
    let violation = reports.iter().any(|r| !r.holds);
    let mut outcome = if let [single] = &reports[..] {
        ctx.emit("bounds", check, seed, &[(out, json(single)?)])?
    } else {
        let summary = with_suffix(out, ".summary.csv");
        ctx.emit("bounds", check, seed, &[(out, json(&reports)?), (&summary, formats::reports_csv(&reports))])?
    };
    outcome.violation = violation;
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// clique

#[derive(Debug, Serialize)]
struct FindResult {
    status: &'static str,
    witness: Option<WitnessJson>,
    stats: clique::RunStats,
}

#[derive(Debug, Serialize)]
struct VerifyResult {
    valid: bool,
    diagnostics: Vec<String>,
}

fn cmd_clique(ctx: &RunContext, action: &CliqueAction) -> anyhow::Result<Outcome> {
    match action {
        CliqueAction::Find { finder, graph_out, out } => {
            let cfg = finder.config();
            let run = clique::find_witness_online(finder.n, finder.m, &cfg, finder.seed)?;
            let status = if run.witness.is_some() { "found" } else { "not found by horizon" };
            info!("witness {status} (stopped at t = {})", run.stats.stop_time);
            let result = FindResult { status, witness: run.witness.as_ref().map(WitnessJson::from), stats: run.stats };
            let mut files: Vec<(&Path, String)> = vec![(out, json(&result)?)];
            if let Some(path) = graph_out {
                files.push((path, formats::edge_list(&run.graph, finder.seed)));
            }
            ctx.emit("clique", action, finder.seed, &files)
        }
        CliqueAction::Success { finder, trials, out } => {
            let cfg = finder.config();
            let est = clique::success_probability(&cfg, finder.m, *trials, finder.seed, &ctx.executor()?)?;
            ctx.emit("clique", action, finder.seed, &[(out, json(&est)?)])
        }
        CliqueAction::Greedy { graph, out } => {
            let (g, seed) = formats::read_edge_list(graph)?;
            let w = clique::greedy_max_witness(&g);
            info!("greedy witness of size {}", w.k());
            ctx.emit("clique", action, seed, &[(out, json(&WitnessJson::from(&w))?)])
        }
        CliqueAction::Verify { graph, witness, out } => {
            let (g, seed) = formats::read_edge_list(graph)?;
            let w = formats::read_witness(witness)?;
            let check = clique::verify_witness(&g, &w)?;
            let result = VerifyResult { valid: check.valid, diagnostics: check.diagnostics };
            let text = json(&result)?;
            let mut outcome = match out {
                Some(path) => ctx.emit("clique", action, seed, &[(path, text)])?,
                None => {
                    print!("{text}");
                    Outcome::default()
                }
            };
            outcome.violation = !result.valid;
            Ok(outcome)
        }
    }
}
