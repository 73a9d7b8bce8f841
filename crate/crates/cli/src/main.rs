//! `finsler` — command-line front end for the Finsler metric laboratory.
//!
//! Subcommands:
//!   list        describe the metric catalog
//!   check       run the homogeneity / convexity / flatness check suite
//!   rigidity    classify metrics against the flat ⇔ base-independent dichotomy
//!   geodesic    integrate the geodesic flow and measure straightness
//!   parse-eval  parse an expression metric and optionally evaluate it
//!
//! Machine-readable output (JSON or CSV) goes to standard output; a short
//! human summary, including wall time, goes to standard error so that stdout
//! stays byte-deterministic for fixed inputs.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finsler_core::geodesic::integrate_geodesic;
use finsler_core::report::{render_check_text, render_rigidity_text, run_check};
use finsler_core::{
    flatness, zoo, CheckOptions, CheckReport, Error, FdOptions, Kind, MetricField, RigidityReport,
    Termination, Tolerances, Verdict,
};
use serde::Serialize;

type Metric = MetricField<f64>;

#[derive(Parser)]
#[command(
    name = "finsler",
    version,
    about = "Numerical laboratory for real and complex Finsler metrics",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the metric catalog with parameters and known properties.
    List(ListArgs),
    /// Run homogeneity, convexity, and flatness checks on one metric.
    Check(CheckArgs),
    /// Classify one metric (or a parameter sweep) against the rigidity
    /// dichotomy: flat if and only if independent of the base point.
    Rigidity(RigidityArgs),
    /// Integrate the geodesic flow from one initial condition; emit a CSV
    /// trace and a straightness summary.
    Geodesic(GeodesicArgs),
    /// Parse an expression metric, report warnings, and optionally evaluate
    /// it at one point.
    ParseEval(ParseEvalArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Real,
    Complex,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Real => Kind::Real,
            KindArg::Complex => Kind::Complex,
        }
    }
}

/// `NAME=VALUE` with a finite numeric value.
fn parse_kv(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    let value: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("parameter '{}' has a non-numeric value '{}'", k.trim(), v))?;
    Ok((k.trim().to_string(), value))
}

/// How a subcommand refers to the metric it operates on: a catalog name with
/// optional parameter overrides, or inline expression source.
#[derive(Args)]
struct MetricArgs {
    /// Catalog metric name (see `finsler list`).
    #[arg(value_name = "METRIC", conflicts_with = "expr")]
    name: Option<String>,

    /// Inline expression defining F, e.g. 'sqrt(normsq(v))'.
    #[arg(long, requires = "expr_kind")]
    expr: Option<String>,

    /// Coordinate kind of --expr.
    #[arg(long, value_enum, requires = "expr")]
    expr_kind: Option<KindArg>,

    /// Dimension of --expr (defaults to --dim).
    #[arg(long, requires = "expr")]
    expr_dim: Option<usize>,

    /// Parameters of --expr as comma-separated NAME=VALUE pairs.
    #[arg(long, requires = "expr", value_delimiter = ',', value_parser = parse_kv)]
    expr_params: Vec<(String, f64)>,

    /// Override one catalog parameter (repeatable).
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_kv)]
    param: Vec<(String, f64)>,

    /// Coordinate dimension (n for complex metrics, m for real ones).
    #[arg(long)]
    dim: Option<usize>,

    /// Accept dimensions above the built-in safety caps.
    #[arg(long)]
    allow_large_dim: bool,
}

impl MetricArgs {
    fn resolve(&self) -> Result<Metric, Error> {
        if let Some(source) = &self.expr {
            let kind: Kind = self
                .expr_kind
                .expect("clap enforces --expr-kind with --expr")
                .into();
            let dim = self.expr_dim.or(self.dim).unwrap_or(2);
            return MetricField::from_expr_source(
                "expr",
                source,
                kind,
                dim,
                &self.expr_params,
                self.allow_large_dim,
            );
        }
        let Some(name) = &self.name else {
            return Err(Error::Usage(
                "name a catalog metric or pass --expr (try `finsler list`)".to_string(),
            ));
        };
        zoo::build_with_opts(name, self.dim, &self.param, self.allow_large_dim)
    }

    /// Rebuild with one parameter forced to a new value (sweeps).
    fn resolve_with(&self, key: &str, value: f64) -> Result<Metric, Error> {
        if self.expr.is_some() {
            let mut params = self.expr_params.clone();
            match params.iter_mut().find(|(k, _)| k == key) {
                Some(slot) => slot.1 = value,
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "expression metric has no parameter '{key}'"
                    )))
                }
            }
            let kind: Kind = self
                .expr_kind
                .expect("clap enforces --expr-kind with --expr")
                .into();
            let dim = self.expr_dim.or(self.dim).unwrap_or(2);
            return MetricField::from_expr_source(
                "expr",
                self.expr.as_deref().unwrap(),
                kind,
                dim,
                &params,
                self.allow_large_dim,
            );
        }
        let Some(name) = &self.name else {
            return Err(Error::Usage(
                "name a catalog metric or pass --expr (try `finsler list`)".to_string(),
            ));
        };
        let mut overrides: Vec<(String, f64)> = self
            .param
            .iter()
            .filter(|(k, _)| k != key)
            .cloned()
            .collect();
        overrides.push((key.to_string(), value));
        zoo::build_with_opts(name, self.dim, &overrides, self.allow_large_dim)
    }
}

#[derive(Args)]
struct SampleArgs {
    /// Seed for the deterministic sample stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of samples per check.
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Args)]
struct TolArgs {
    /// Absolute bound on homogeneity residuals.
    #[arg(long)]
    tol_homog: Option<f64>,

    /// Positive-definiteness margin for fundamental tensors.
    #[arg(long)]
    tol_posdef: Option<f64>,

    /// Relative residual below which a metric counts as flat.
    #[arg(long)]
    tol_flat: Option<f64>,

    /// Relative residual above which a metric counts as non-flat.
    #[arg(long)]
    tol_nonflat: Option<f64>,

    /// Relative tolerance for the finite-difference cross-check.
    #[arg(long)]
    tol_fd: Option<f64>,
}

impl TolArgs {
    fn resolve(&self) -> Tolerances {
        let mut t = Tolerances::default();
        if let Some(v) = self.tol_homog {
            t.homog = v;
        }
        if let Some(v) = self.tol_posdef {
            t.posdef = v;
        }
        if let Some(v) = self.tol_flat {
            t.flat = v;
        }
        if let Some(v) = self.tol_nonflat {
            t.nonflat = v;
        }
        if let Some(v) = self.tol_fd {
            t.fd = v;
        }
        t
    }
}

#[derive(Args)]
struct ListArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    metric: MetricArgs,

    #[command(flatten)]
    sample: SampleArgs,

    #[command(flatten)]
    tol: TolArgs,

    /// Cross-check automatic derivatives against finite differences.
    #[arg(long)]
    fd_check: bool,

    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct RigidityArgs {
    #[command(flatten)]
    metric: MetricArgs,

    #[command(flatten)]
    sample: SampleArgs,

    #[command(flatten)]
    tol: TolArgs,

    /// Sweep one parameter: NAME=V1,V2,... (one report row per value).
    #[arg(long, value_name = "NAME=V1,V2,...")]
    sweep: Option<String>,

    /// Shorthand for --sweep t=V1,V2,...
    #[arg(long, value_name = "V1,V2,...", conflicts_with = "sweep")]
    t: Option<String>,

    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct GeodesicArgs {
    #[command(flatten)]
    metric: MetricArgs,

    /// Initial base point, comma separated. Complex metrics integrate
    /// through their real form: pass packed coordinates (real parts of z,
    /// then imaginary parts).
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    x0: Vec<f64>,

    /// Initial velocity, comma separated (same layout as --x0).
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    u0: Vec<f64>,

    /// Integration horizon (total parameter time).
    #[arg(long, default_value_t = 1.0)]
    horizon: f64,

    /// Number of fixed Runge-Kutta steps.
    #[arg(long, default_value_t = 1000)]
    steps: usize,
}

#[derive(Args)]
struct ParseEvalArgs {
    /// Expression source text defining F.
    #[arg(long, required = true)]
    expr: String,

    /// Coordinate kind of the expression.
    #[arg(long, value_enum, default_value = "complex")]
    expr_kind: KindArg,

    /// Coordinate dimension.
    #[arg(long, default_value_t = 2)]
    expr_dim: usize,

    /// Parameters as comma-separated NAME=VALUE pairs.
    #[arg(long, value_delimiter = ',', value_parser = parse_kv)]
    expr_params: Vec<(String, f64)>,

    /// Base point to evaluate at, comma separated (packed coordinates for
    /// complex expressions: real parts, then imaginary parts).
    #[arg(long, value_delimiter = ',', requires = "tangent", allow_hyphen_values = true)]
    base: Option<Vec<f64>>,

    /// Tangent vector to evaluate at (same layout as --base).
    #[arg(long, value_delimiter = ',', requires = "base", allow_hyphen_values = true)]
    tangent: Option<Vec<f64>>,

    /// Accept dimensions above the built-in safety caps.
    #[arg(long)]
    allow_large_dim: bool,

    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match cli.cmd {
        Cmd::List(args) => cmd_list(&args),
        Cmd::Check(args) => cmd_check(&args, started),
        Cmd::Rigidity(args) => cmd_rigidity(&args, started),
        Cmd::Geodesic(args) => cmd_geodesic(&args, started),
        Cmd::ParseEval(args) => cmd_parse_eval(&args, started),
    };
    std::process::exit(match code {
        Ok(c) => c,
        Err(e) => {
            eprintln!("finsler: {e}");
            exit_code_for(&e)
        }
    });
}

/// Exit codes: 0 success, 1 completed-with-failing-verdicts, 2 bad input,
/// 3 numeric failure.
fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Numerics(_) | Error::SingularMetric(_) => 3,
        Error::Domain(_)
        | Error::Usage(_)
        | Error::UnknownMetric(_)
        | Error::InvalidParameter(_)
        | Error::Dsl(_) => 2,
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn wall(started: Instant) -> String {
    format!("{:.1} ms", started.elapsed().as_secs_f64() * 1e3)
}

// ---------------------------------------------------------------------------
// list
// ---------------------------------------------------------------------------

fn flag_line(flags: &zoo::Flags) -> String {
    fn mark(out: &mut Vec<String>, name: &str, value: Option<bool>) {
        if let Some(v) = value {
            out.push(format!("{}{name}", if v { '+' } else { '-' }));
        }
    }
    let mut parts = Vec::new();
    mark(
        &mut parts,
        "positively-homogeneous-real",
        flags.positively_homogeneous_real,
    );
    mark(
        &mut parts,
        "absolutely-homogeneous-real",
        flags.absolutely_homogeneous_real,
    );
    mark(&mut parts, "homogeneous-complex", flags.homogeneous_complex);
    mark(&mut parts, "strongly-convex", flags.strongly_convex);
    mark(
        &mut parts,
        "strongly-pseudoconvex",
        flags.strongly_pseudoconvex,
    );
    mark(
        &mut parts,
        "projectively-flat-real",
        flags.projectively_flat_real,
    );
    mark(&mut parts, "dually-flat-real", flags.dually_flat_real);
    mark(
        &mut parts,
        "complex-projectively-flat",
        flags.complex_projectively_flat,
    );
    mark(&mut parts, "complex-dually-flat", flags.complex_dually_flat);
    parts.join(" ")
}

fn cmd_list(args: &ListArgs) -> Result<i32, Error> {
    match args.format {
        Format::Json => print_json(&zoo::zoo()),
        Format::Text => {
            for entry in zoo::zoo() {
                println!(
                    "{}  [{}, dim {}]",
                    entry.name,
                    match entry.kind {
                        Kind::Real => "real",
                        Kind::Complex => "complex",
                    },
                    entry.default_dim
                );
                println!("  {}", entry.summary.split_whitespace().collect::<Vec<_>>().join(" "));
                if entry.params.is_empty() {
                    println!("  params: (none)");
                } else {
                    let rendered: Vec<String> = entry
                        .params
                        .iter()
                        .map(|p| format!("{}={} ({})", p.name, p.default, p.doc))
                        .collect();
                    println!("  params: {}", rendered.join("; "));
                }
                println!(
                    "  expression twin: {}",
                    if entry.dsl.is_some() { "yes" } else { "no" }
                );
                println!("  known properties: {}", flag_line(&entry.flags));
                println!();
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

fn verdict_counts(report: &CheckReport) -> String {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for row in &report.rows {
        *counts.entry(row.verdict.label()).or_insert(0) += 1;
    }
    counts
        .iter()
        .map(|(k, v)| format!("{v} {k}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_check(args: &CheckArgs, started: Instant) -> Result<i32, Error> {
    let metric = args.metric.resolve()?;
    let spec = metric.default_sample_spec(args.sample.seed, args.sample.samples);
    let tol = args.tol.resolve();
    let opts = CheckOptions {
        fd_check: args.fd_check,
        fd: FdOptions::default(),
    };
    let report = run_check(&metric, &spec, &tol, &opts)?;
    match args.format {
        Format::Json => print_json(&report),
        Format::Text => print!("{}", render_check_text(&report)),
    }
    let failing: Vec<&str> = report
        .rows
        .iter()
        .filter(|r| matches!(r.verdict, Verdict::Fail | Verdict::Inconclusive))
        .map(|r| r.name.as_str())
        .collect();
    eprintln!(
        "check {}: {} samples ({} failed), rows: {}{} [{}]",
        report.metric,
        report.samples_used,
        report.sample_failures,
        verdict_counts(&report),
        if failing.is_empty() {
            String::new()
        } else {
            format!("; failing: {}", failing.join(", "))
        },
        wall(started)
    );
    Ok(if report.all_pass() { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// rigidity
// ---------------------------------------------------------------------------

/// `NAME=V1,V2,...` → the name and its values.
fn parse_sweep(s: &str) -> Result<(String, Vec<f64>), Error> {
    let (key, rest) = s.split_once('=').ok_or_else(|| {
        Error::Usage(format!("--sweep expects NAME=V1,V2,..., got '{s}'"))
    })?;
    let values: Vec<f64> = rest
        .split(',')
        .map(|v| {
            v.trim().parse::<f64>().map_err(|_| {
                Error::Usage(format!("--sweep value '{v}' is not a number"))
            })
        })
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err(Error::Usage("--sweep needs at least one value".to_string()));
    }
    Ok((key.trim().to_string(), values))
}

fn cmd_rigidity(args: &RigidityArgs, started: Instant) -> Result<i32, Error> {
    let sweep = match (&args.sweep, &args.t) {
        (Some(s), None) => Some(parse_sweep(s)?),
        (None, Some(list)) => Some(parse_sweep(&format!("t={list}"))?),
        (None, None) => None,
        (Some(_), Some(_)) => unreachable!("clap marks --sweep and --t as conflicting"),
    };

    let tol = args.tol.resolve();
    let base_metric = args.metric.resolve()?;
    let spec = base_metric.default_sample_spec(args.sample.seed, args.sample.samples);

    let metrics: Vec<Metric> = match &sweep {
        None => vec![base_metric.clone()],
        Some((key, values)) => values
            .iter()
            .map(|&v| args.metric.resolve_with(key, v))
            .collect::<Result<_, _>>()?,
    };

    let mut entries = Vec::with_capacity(metrics.len());
    for metric in &metrics {
        let summary = flatness::rigidity_scan(metric, &spec, tol.flat, tol.nonflat)?;
        entries.push(finsler_core::report::SweepEntry {
            params: metric.params().clone(),
            summary,
        });
    }
    let report = RigidityReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        metric: base_metric.name().to_string(),
        kind: base_metric.kind(),
        dim: base_metric.dim(),
        sample_spec: spec,
        tol_flat: tol.flat,
        tol_nonflat: tol.nonflat,
        entries,
    };
    match args.format {
        Format::Json => print_json(&report),
        Format::Text => print!("{}", render_rigidity_text(&report)),
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for e in &report.entries {
        *counts.entry(e.summary.classification.label()).or_insert(0) += 1;
    }
    eprintln!(
        "rigidity {}: {} parameter set(s), classifications: {} [{}]",
        report.metric,
        report.entries.len(),
        counts
            .iter()
            .map(|(k, v)| format!("{v} {k}"))
            .collect::<Vec<_>>()
            .join(", "),
        wall(started)
    );
    Ok(if report.all_classified() { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// geodesic
// ---------------------------------------------------------------------------

fn cmd_geodesic(args: &GeodesicArgs, started: Instant) -> Result<i32, Error> {
    let metric = args.metric.resolve()?;
    let metric = match metric.kind() {
        Kind::Real => metric,
        Kind::Complex => {
            eprintln!(
                "note: '{}' is complex; integrating its real form on packed coordinates",
                metric.name()
            );
            metric.to_real()
        }
    };
    let trace = integrate_geodesic(&metric, &args.x0, &args.u0, args.horizon, args.steps)?;

    let m = metric.real_dim();
    let mut header = String::from("t");
    for a in 1..=m {
        header.push_str(&format!(",x_{a}"));
    }
    for a in 1..=m {
        header.push_str(&format!(",u_{a}"));
    }
    println!("{header}");
    for k in 0..trace.t.len() {
        let mut line = format!("{}", trace.t[k]);
        for a in 0..m {
            line.push_str(&format!(",{}", trace.x[k][a]));
        }
        for a in 0..m {
            line.push_str(&format!(",{}", trace.u[k][a]));
        }
        println!("{line}");
    }

    let (term_text, code) = match trace.termination {
        Termination::Completed => ("completed", 0),
        Termination::LeftDomain => ("left-domain", 1),
        Termination::StepFailure => ("step-failure", 3),
    };
    eprintln!(
        "geodesic {}: {} ({} points), straightness deviation {:.3e}, path length {:.6} [{}]",
        metric.name(),
        term_text,
        trace.t.len(),
        trace.straightness_deviation,
        trace.path_length,
        wall(started)
    );
    Ok(code)
}

// ---------------------------------------------------------------------------
// parse-eval
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ParseEvalReport {
    version: String,
    source: String,
    kind: Kind,
    dim: usize,
    params: BTreeMap<String, f64>,
    warnings: Vec<WarningOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
}

#[derive(Serialize)]
struct WarningOut {
    position: usize,
    message: String,
}

fn cmd_parse_eval(args: &ParseEvalArgs, started: Instant) -> Result<i32, Error> {
    let kind: Kind = args.expr_kind.into();
    let metric = MetricField::<f64>::from_expr_source(
        "expr",
        &args.expr,
        kind,
        args.expr_dim,
        &args.expr_params,
        args.allow_large_dim,
    )?;

    let value = match (&args.base, &args.tangent) {
        (Some(base), Some(tangent)) => {
            let m = metric.real_dim();
            if base.len() != m || tangent.len() != m {
                return Err(Error::Usage(format!(
                    "expected {m} packed coordinates for --base and --tangent \
                     (dimension {} {}), got {} and {}",
                    metric.dim(),
                    match kind {
                        Kind::Real => "real",
                        Kind::Complex => "complex",
                    },
                    base.len(),
                    tangent.len()
                )));
            }
            let real_form = metric.to_real();
            Some(real_form.evaluate_real(&finsler_core::RealTangentSample {
                x: base.clone(),
                u: tangent.clone(),
            })?)
        }
        _ => None,
    };

    let report = ParseEvalReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        source: args.expr.clone(),
        kind,
        dim: metric.dim(),
        params: metric.params().clone(),
        warnings: metric
            .expr_warnings()
            .iter()
            .map(|w| WarningOut {
                position: w.pos,
                message: w.message.clone(),
            })
            .collect(),
        value,
    };
    match args.format {
        Format::Json => print_json(&report),
        Format::Text => {
            println!(
                "parsed ({}, dim {}), {} warning(s)",
                match kind {
                    Kind::Real => "real",
                    Kind::Complex => "complex",
                },
                report.dim,
                report.warnings.len()
            );
            for w in &report.warnings {
                println!("  warning at offset {}: {}", w.position, w.message);
            }
            if let Some(v) = report.value {
                println!("value: {v}");
            }
        }
    }
    eprintln!(
        "parse-eval: ok, {} warning(s){} [{}]",
        report.warnings.len(),
        report
            .value
            .map(|v| format!(", value {v}"))
            .unwrap_or_default(),
        wall(started)
    );
    Ok(0)
}

