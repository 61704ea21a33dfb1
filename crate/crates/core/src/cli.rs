//! Command-line front end. [`run`] returns the exit code and both output
//! streams so the whole surface can be tested in-process.
//!
//! Exit codes: 0 success, 1 parse/validation error, 2 unsupported class,
//! 3 verification mismatch.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::core::{check_structural_consistency, core, core_by_deletion, invariant_checks, Certificate, CoreMethod};
use crate::error::Error;
use crate::gen::{fixture, GenKind, GenSpec};
use crate::graph::{parse_graph, Edge, Graph, GraphClass};
use crate::oracle::{DEFAULT_LIMIT, HARD_LIMIT};
use crate::solver;
use crate::verify::{run_campaign, VerifyConfig, VerifyKind};

pub const ORACLE_LIMIT_ENV: &str = "UNICORE_ORACLE_LIMIT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "unicore", version, about = "Cores, α and μ of trees, forests and unicyclic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report n, m, class, α, μ, KE status and the core of a graph.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Structural)]
        method: MethodArg,
    },
    /// Run a seeded differential campaign against the slow routes and the oracle.
    Verify {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        min_n: Option<usize>,
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "mixed")]
        kind: String,
        /// Defaults to $UNICORE_ORACLE_LIMIT, then 20.
        #[arg(long)]
        oracle_limit: Option<usize>,
        /// Print one line per instance.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generate a random tree, forest or unicyclic graph as an edge list.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Test every cycle edge for α-criticality.
    Critical {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// Edge-list file, or `-` for stdin.
    #[arg(required_unless_present = "fixture")]
    path: Option<String>,
    /// Use a built-in fixture graph instead of a file.
    #[arg(long, conflicts_with = "path")]
    fixture: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Structural,
    Deletion,
    Both,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CliOutput { code, stdout: String::new(), stderr }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedClass(_) | Error::NotUnicyclic(_) => EXIT_UNSUPPORTED,
        _ => EXIT_INVALID,
    }
}

fn from_error(e: Error) -> CliOutput {
    CliOutput::fail(exit_code(&e), format!("error: {e}"))
}

/// Machine-readable analysis of one graph. Serialized with sorted keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: usize,
    pub class: GraphClass,
    pub alpha: usize,
    pub mu: usize,
    pub koenig_egervary: bool,
    pub core: Vec<String>,
    pub method: CoreMethod,
    pub cycle: Option<Vec<String>>,
    pub n1: Option<Vec<String>>,
    pub alpha_critical_cycle_edges: Option<Vec<Edge>>,
    pub certificate: Option<Certificate>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("json");
        s.push('\n');
        s
    }

    /// One `key: value` line per field, keys sorted, values as compact JSON.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        out
    }
}

/// Cycle data of every cyclic component, in component order.
struct CycleSummary {
    cycle: Vec<String>,
    n1: BTreeSet<String>,
    critical: Vec<Edge>,
}

fn cycle_summary(g: &Graph) -> Result<CycleSummary, Error> {
    let mut summary = CycleSummary { cycle: Vec::new(), n1: BTreeSet::new(), critical: Vec::new() };
    for comp in g.components() {
        if comp.classify() != GraphClass::Unicyclic {
            continue;
        }
        let info = comp.find_cycle()?;
        summary.critical.extend(solver::cycle_alpha_critical_edges(&comp)?);
        summary.cycle.extend(info.cycle_vertices);
        summary.n1.extend(info.n1);
    }
    Ok(summary)
}

/// Builds the report with the structural (default) core route.
pub fn analyze(g: &Graph) -> Result<AnalysisReport, Error> {
    let c = core(g)?;
    build_report(g, c.core, c.method, c.certificate)
}

fn build_report(
    g: &Graph,
    core: BTreeSet<String>,
    method: CoreMethod,
    certificate: Option<Certificate>,
) -> Result<AnalysisReport, Error> {
    let class = g.classify();
    let alpha = solver::alpha(g)?;
    let mu = solver::mu(g)?;
    let (cycle, n1, critical) = if class.is_acyclic() {
        (None, None, None)
    } else {
        let s = cycle_summary(g)?;
        (Some(s.cycle), Some(s.n1.into_iter().collect()), Some(s.critical))
    };
    Ok(AnalysisReport {
        n: g.order(),
        m: g.size(),
        class,
        alpha,
        mu,
        koenig_egervary: alpha + mu == g.order(),
        core: core.into_iter().collect(),
        method,
        cycle,
        n1,
        alpha_critical_cycle_edges: critical,
        certificate,
    })
}

fn load(input: &Input, stdin: &dyn Fn() -> std::io::Result<String>) -> Result<Graph, CliOutput> {
    if let Some(name) = &input.fixture {
        return fixture(name).map_err(from_error);
    }
    let path = input.path.as_deref().expect("clap enforces path or fixture");
    let text = if path == "-" {
        stdin()
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliOutput::fail(EXIT_INVALID, format!("error: cannot read {path}: {e}")))?;
    parse_graph(&text).map_err(from_error)
}

fn require_supported(g: &Graph) -> Result<(), CliOutput> {
    let class = g.classify();
    if class.is_supported() {
        Ok(())
    } else {
        Err(from_error(Error::UnsupportedClass(class)))
    }
}

fn cmd_analyze(g: &Graph, json: bool, method: MethodArg) -> CliOutput {
    if let Err(out) = require_supported(g) {
        return out;
    }
    let result = match method {
        MethodArg::Structural => analyze(g),
        MethodArg::Deletion => core_by_deletion(g).and_then(|c| build_report(g, c.core, c.method, None)),
        MethodArg::Both => return cmd_analyze_both(g, json),
    };
    match result {
        Ok(report) => CliOutput::ok(if json { report.to_json() } else { report.to_text() }),
        Err(e) => from_error(e),
    }
}

fn cmd_analyze_both(g: &Graph, json: bool) -> CliOutput {
    let checked = (|| -> Result<(AnalysisReport, Vec<&'static str>), Error> {
        if g.classify() == GraphClass::Unicyclic {
            let r = check_structural_consistency(g)?;
            let failures = r.failures();
            Ok((build_report(g, r.fast.core, r.fast.method, r.fast.certificate)?, failures))
        } else {
            let report = analyze(g)?;
            let deletion = core_by_deletion(g)?;
            let core: BTreeSet<String> = report.core.iter().cloned().collect();
            let mut failures: Vec<&'static str> =
                invariant_checks(g, &deletion.core)?.into_iter().filter(|c| !c.holds).map(|c| c.name).collect();
            if core != deletion.core {
                failures.insert(0, "core_equals_deletion_core");
            }
            Ok((report, failures))
        }
    })();
    match checked {
        Err(e) => from_error(e),
        Ok((report, failures)) => {
            let mut out = CliOutput::ok(if json { report.to_json() } else { report.to_text() });
            if !failures.is_empty() {
                out.code = EXIT_MISMATCH;
                out.stderr = format!("consistency check failed: {}\n", failures.join(", "));
            }
            out
        }
    }
}

fn cmd_critical(g: &Graph, json: bool) -> CliOutput {
    let class = g.classify();
    if class != GraphClass::Unicyclic {
        return from_error(Error::NotUnicyclic(class));
    }
    let computed = (|| -> Result<_, Error> {
        let info = g.find_cycle()?;
        let critical = solver::cycle_alpha_critical_edges(g)?;
        let ke = solver::is_koenig_egervary(g)?;
        Ok((info, critical, ke))
    })();
    let (info, critical, ke) = match computed {
        Ok(v) => v,
        Err(e) => return from_error(e),
    };
    let all = critical.len() == info.cycle_edges.len();
    let holds = all == !ke;

    #[derive(Serialize)]
    struct Row<'a> {
        edge: &'a Edge,
        critical: bool,
    }
    #[derive(Serialize)]
    struct CriticalReport<'a> {
        cycle: &'a [String],
        edges: Vec<Row<'a>>,
        critical_count: usize,
        cycle_length: usize,
        koenig_egervary: bool,
        equivalence_holds: bool,
    }
    let report = CriticalReport {
        cycle: &info.cycle_vertices,
        edges: info.cycle_edges.iter().map(|e| Row { edge: e, critical: critical.contains(e) }).collect(),
        critical_count: critical.len(),
        cycle_length: info.cycle_edges.len(),
        koenig_egervary: ke,
        equivalence_holds: holds,
    };
    let stdout = if json {
        let mut s = serde_json::to_string_pretty(&serde_json::to_value(&report).expect("json")).expect("json");
        s.push('\n');
        s
    } else {
        let mut s = format!("cycle: {}\n", info.cycle_vertices.join(" "));
        for row in &report.edges {
            let _ = writeln!(s, "{} {}", row.edge, if row.critical { "critical" } else { "not-critical" });
        }
        let _ = writeln!(s, "critical: {}/{}", report.critical_count, report.cycle_length);
        let _ = writeln!(s, "koenig_egervary: {ke}");
        let _ = writeln!(s, "equivalence: {}", if holds { "holds" } else { "VIOLATED" });
        s
    };
    let mut out = CliOutput::ok(stdout);
    if !holds {
        out.code = EXIT_MISMATCH;
    }
    out
}

fn oracle_limit_default(env: Option<String>) -> Result<usize, CliOutput> {
    match env {
        None => Ok(DEFAULT_LIMIT),
        Some(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&l| l <= HARD_LIMIT)
            .ok_or_else(|| CliOutput::fail(EXIT_INVALID, format!("error: {ORACLE_LIMIT_ENV}={v} is not a count <= {HARD_LIMIT}"))),
    }
}

/// Runs the CLI on explicit arguments, environment and stdin.
pub fn run_with<I, T>(args: I, env_oracle_limit: Option<String>, stdin: &dyn Fn() -> std::io::Result<String>) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK { CliOutput::ok(text) } else { CliOutput::fail(code, text) };
        }
    };
    match cli.command {
        Command::Analyze { input, json, method } => match load(&input, stdin) {
            Ok(g) => cmd_analyze(&g, json, method),
            Err(out) => out,
        },
        Command::Critical { input, json } => match load(&input, stdin) {
            Ok(g) => cmd_critical(&g, json),
            Err(out) => out,
        },
        Command::Gen { kind, n, seed, out } => {
            let spec = match kind.parse::<GenKind>() {
                Ok(kind) => GenSpec { kind, n, seed },
                Err(e) => return from_error(e),
            };
            let text = match spec.to_edge_list() {
                Ok(t) => t,
                Err(e) => return from_error(e),
            };
            match out {
                None => CliOutput::ok(text),
                Some(path) => match std::fs::write(&path, text) {
                    Ok(()) => CliOutput::ok(String::new()),
                    Err(e) => CliOutput::fail(EXIT_INVALID, format!("error: cannot write {}: {e}", path.display())),
                },
            }
        }
        Command::Verify { count, min_n, max_n, seed, kind, oracle_limit, list, json } => {
            let kind = match kind.parse::<VerifyKind>() {
                Ok(k) => k,
                Err(e) => return from_error(e),
            };
            let oracle_limit = match oracle_limit {
                Some(l) => l,
                None => match oracle_limit_default(env_oracle_limit) {
                    Ok(l) => l,
                    Err(out) => return out,
                },
            };
            let cfg = VerifyConfig { count, min_n, max_n, seed, kind, oracle_limit };
            match run_campaign(&cfg) {
                Err(e) => from_error(e),
                Ok(summary) => {
                    let stdout = if json {
                        let mut s = serde_json::to_string_pretty(&serde_json::to_value(&summary).expect("json"))
                            .expect("json");
                        s.push('\n');
                        s
                    } else {
                        summary.render(list)
                    };
                    let mut out = CliOutput::ok(stdout);
                    if !summary.all_passed() {
                        out.code = EXIT_MISMATCH;
                    }
                    out
                }
            }
        }
    }
}

/// Runs the CLI against the process arguments, environment and stdin.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, std::env::var(ORACLE_LIMIT_ENV).ok(), &|| std::io::read_to_string(std::io::stdin()))
}
