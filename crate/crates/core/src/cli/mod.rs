//! Command-line front end: `eval`, `verify` and `list`.
//!
//! Commands return a [`CommandOutput`] instead of printing, so they can be
//! driven in-process as well as from the binary.

pub mod document;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::recursions::{catalog, run_campaign, VerificationReport, CAMPAIGN_TOL};
use crate::series::{evaluate, FunctionKind, SeriesConfig};

pub use document::MatrixDocument;

/// Exit status for parse and input errors.
pub const EXIT_INPUT: i32 = 1;
/// Exit status for a domain violation (`eval`) or a failed check (`verify`).
pub const EXIT_DOMAIN: i32 = 2;
/// Exit status for a series that did not converge.
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hypermat",
    version,
    about = "Hypergeometric and Appell functions of matrix arguments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a function from a matrix document.
    Eval(EvalArgs),
    /// Check catalogued identities on random commuting inputs.
    Verify(VerifyArgs),
    /// Print the identity catalog.
    List,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Path of the input document.
    pub input: PathBuf,
    /// Function kind, when the document does not name one.
    #[arg(long)]
    pub kind: Option<FunctionKind>,
    /// Relative truncation tolerance.
    #[arg(long, default_value_t = SeriesConfig::default().tol)]
    pub tol: f64,
    #[arg(long, default_value_t = SeriesConfig::default().max_degree)]
    pub max_degree: usize,
    /// Evaluate even outside the classical convergence region.
    #[arg(long)]
    pub allow_boundary: bool,
    /// Print the parsed document in canonical form instead of evaluating.
    #[arg(long)]
    pub echo: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Comma-separated identity ids; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub ids: Vec<String>,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
    pub orders: Vec<usize>,
    #[arg(long = "s", value_delimiter = ',', default_values_t = [1, 2, 3])]
    pub s_values: Vec<usize>,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Pass threshold on the relative residual.
    #[arg(long, default_value_t = CAMPAIGN_TOL)]
    pub tol: f64,
    /// Truncation tolerance of every series evaluation.
    #[arg(long, default_value_t = SeriesConfig::default().tol)]
    pub series_tol: f64,
    #[arg(long, default_value_t = SeriesConfig::default().max_degree)]
    pub max_degree: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Default for VerifyArgs {
    fn default() -> Self {
        VerifyArgs {
            ids: Vec::new(),
            trials: 5,
            orders: vec![1, 2, 3],
            s_values: vec![1, 2, 3],
            seed: 2024,
            tol: CAMPAIGN_TOL,
            series_tol: SeriesConfig::default().tol,
            max_degree: SeriesConfig::default().max_degree,
            out: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(status: i32, message: impl AsRef<str>) -> Self {
        CommandOutput {
            status,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.as_ref()),
        }
    }
}

pub fn run(cli: Cli) -> CommandOutput {
    match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::List => cmd_list(),
    }
}

fn exit_status(e: &Error) -> i32 {
    match e {
        Error::DomainViolation { .. } => EXIT_DOMAIN,
        Error::NotConverged { .. } | Error::NonConvergent(_) | Error::Overflow(_) => EXIT_NOT_CONVERGED,
        _ => EXIT_INPUT,
    }
}

pub fn cmd_eval(args: &EvalArgs) -> CommandOutput {
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => return CommandOutput::fail(EXIT_INPUT, format!("cannot read {}: {e}", args.input.display())),
    };
    let doc = match MatrixDocument::parse(&text) {
        Ok(d) => d,
        Err(e) => return CommandOutput::fail(EXIT_INPUT, e),
    };
    if args.echo {
        return CommandOutput::ok(doc.to_json() + "\n");
    }
    let params = match doc.parameters(args.kind) {
        Ok(p) => p,
        Err(e) => return CommandOutput::fail(EXIT_INPUT, e),
    };
    let cfg = SeriesConfig {
        tol: args.tol,
        max_degree: args.max_degree,
        enforce_domain: !args.allow_boundary,
        ..SeriesConfig::default()
    };
    match evaluate(&params, &doc.point, &cfg) {
        Ok(report) => {
            let out = json!({
                "tool": env!("CARGO_PKG_NAME"),
                "version": env!("CARGO_PKG_VERSION"),
                "kind": params.kind().tag(),
                "order": params.order(),
                "degrees_used": report.degrees_used,
                "converged": report.converged,
                "last_increment_norm": report.last_increment_norm,
                "value": document::matrix_value(&report.value),
            });
            CommandOutput::ok(serde_json::to_string_pretty(&out).expect("finite report") + "\n")
        }
        Err(e) => CommandOutput::fail(exit_status(&e), e.to_string()),
    }
}

#[derive(Debug, Serialize)]
struct ReportDocument<'a> {
    tool: &'static str,
    version: &'static str,
    config: Value,
    summary: Summary,
    results: Vec<ReportEntry<'a>>,
}

#[derive(Debug, Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
    worst_residual: Option<f64>,
}

#[derive(Debug, Serialize)]
struct ReportEntry<'a> {
    id: &'a str,
    s: usize,
    r: usize,
    seed: Option<u64>,
    point: &'a crate::recursions::PointRecord,
    residual: Option<f64>,
    passed: bool,
    lhs_degrees: Option<usize>,
    rhs_max_degrees: Option<usize>,
    rhs_evaluations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<&'a str>,
}

impl<'a> From<&'a VerificationReport> for ReportEntry<'a> {
    fn from(r: &'a VerificationReport) -> Self {
        ReportEntry {
            id: &r.id,
            s: r.s,
            r: r.order,
            seed: r.seed,
            point: &r.point,
            residual: r.residual,
            passed: r.passed,
            lhs_degrees: r.lhs.map(|d| d.degrees_used),
            rhs_max_degrees: r.rhs.iter().map(|d| d.degrees_used).max(),
            rhs_evaluations: r.rhs.len(),
            failure: r.failure.as_deref(),
        }
    }
}

/// Runs a campaign and renders the report document.
///
/// Returns the reports alongside the output so callers can inspect them.
pub fn run_verify(args: &VerifyArgs) -> Result<(Vec<VerificationReport>, String), CommandOutput> {
    let ids: Vec<&str> = if args.ids.is_empty() {
        catalog().iter().map(|d| d.id).collect()
    } else {
        args.ids.iter().map(String::as_str).collect()
    };
    let cfg = SeriesConfig {
        tol: args.series_tol,
        max_degree: args.max_degree,
        ..SeriesConfig::default()
    };
    if let Err(e) = cfg.validate() {
        return Err(CommandOutput::fail(EXIT_INPUT, e.to_string()));
    }
    let mut reports = match run_campaign(
        &ids,
        args.trials,
        &args.orders,
        &args.s_values,
        args.seed,
        &cfg,
        args.tol,
    ) {
        Ok(r) => r,
        Err(Error::UnknownIdentity(id)) => {
            let valid: Vec<&str> = catalog().iter().map(|d| d.id).collect();
            return Err(CommandOutput::fail(
                EXIT_INPUT,
                format!("unknown identity \"{id}\"; valid ids: {}", valid.join(", ")),
            ));
        }
        Err(e) => return Err(CommandOutput::fail(EXIT_INPUT, e.to_string())),
    };
    reports.sort_by(|a, b| a.id.cmp(&b.id).then(a.seed.cmp(&b.seed)));

    let passed = reports.iter().filter(|r| r.passed).count();
    let worst = reports.iter().filter_map(|r| r.residual).reduce(f64::max);
    let doc = ReportDocument {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config: json!({
            "ids": ids,
            "trials": args.trials,
            "orders": args.orders,
            "s_values": args.s_values,
            "seed": args.seed,
            "campaign_tol": args.tol,
            "series": {
                "tol": cfg.tol,
                "max_degree": cfg.max_degree,
                "consecutive_small": cfg.consecutive_small,
                "enforce_domain": cfg.enforce_domain,
            },
        }),
        summary: Summary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
            worst_residual: worst,
        },
        results: reports.iter().map(ReportEntry::from).collect(),
    };
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    Ok((reports, text))
}

pub fn cmd_verify(args: &VerifyArgs) -> CommandOutput {
    let (reports, text) = match run_verify(args) {
        Ok(r) => r,
        Err(out) => return out,
    };
    let mut out = CommandOutput::default();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return CommandOutput::fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display()));
            }
        }
        None => out.stdout = text,
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        out.status = EXIT_DOMAIN;
        out.stderr = format!("error: {failed} of {} identity checks failed\n", reports.len());
    }
    out
}

pub fn cmd_list() -> CommandOutput {
    let header = ["ID", "FUNCTION", "SHIFTED", "DIRECTION", "FORM", "HYPOTHESES", "ANCHOR"];
    let rows: Vec<[String; 7]> = catalog()
        .iter()
        .map(|d| {
            let hyps: Vec<String> = d.hypotheses.iter().map(ToString::to_string).collect();
            [
                d.id.to_string(),
                d.kind.symbol().to_string(),
                d.shifted_parameter.to_string(),
                d.direction.as_str().to_string(),
                d.form.as_str().to_string(),
                hyps.join("; "),
                d.anchor.to_string(),
            ]
        })
        .collect();
    let width = |i: usize| {
        rows.iter()
            .map(|r| r[i].chars().count())
            .chain([header[i].len()])
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..header.len()).map(width).collect();
    let render = |cells: Vec<&str>| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            line.push_str(cell);
            if i + 1 < cells.len() {
                line.extend(std::iter::repeat_n(' ', widths[i] - cell.chars().count() + 2));
            }
        }
        line.push('\n');
        line
    };
    let mut text = render(header.to_vec());
    for r in &rows {
        text.push_str(&render(r.iter().map(String::as_str).collect()));
    }
    CommandOutput::ok(text)
}
