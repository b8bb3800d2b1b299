//! `ptl`: scans, solvers and case traces for consecutive powerful numbers
//! around cubes.
//!
//! Exit codes: 0 clean, 1 failed verification, 2 counterexample found,
//! 64 usage error, 65 domain or range error, 70 internal cross-check failure,
//! 74 output error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use chrono::Utc;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use output::{canonical_json, emit, Csv, Format, Invocation, Rendered};
use ptl_core::diophantine::{
    cube_diff_solutions, mordell_points, solve_quad_cubic, CubeCoeff, MordellCurve, QuadCubicSolutionSet, QuadSign,
};
use ptl_core::engine::{corollary_scan, theorem_scan, trace_case, Counterexample, ScanOptions, SearchReport, Verdict};
use ptl_core::powerful::{consecutive_runs, powerful_up_to};
use ptl_core::verify::verify_lemmas;
use ptl_core::Error;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_COUNTEREXAMPLE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_SOFTWARE: u8 = 70;
const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(name = "ptl", version, about = "Consecutive powerful numbers around cubes: scans, solvers and traces")]
#[command(propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the report to FILE (atomically) instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Suppress progress on stderr
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List powerful numbers up to a limit, or runs of consecutive ones
    Powerful {
        /// Largest value considered
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        /// Report starts of runs of this many consecutive powerful numbers
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..64))]
        run: Option<u64>,
    },
    /// Search a range of x for counterexamples
    Scan {
        #[command(subcommand)]
        kind: ScanCommand,
    },
    /// Enumerate solutions of one of the auxiliary equations
    Solve {
        #[command(subcommand)]
        equation: SolveCommand,
    },
    /// Walk the casework for a single x
    Trace {
        #[arg(allow_negative_numbers = true)]
        x: i64,
    },
    /// Run the bounded lemma and 3-adic property suites
    VerifyLemmas,
}

#[derive(Args, Debug)]
struct ScanRange {
    #[arg(long, allow_negative_numbers = true)]
    from: i64,
    #[arg(long, allow_negative_numbers = true)]
    to: i64,
    /// Worker threads (0 = available parallelism)
    #[arg(long, env = "PTL_JOBS", default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum ScanCommand {
    /// x³ − 1 = p²a³ and x³ + 1 = q²b³ simultaneously
    Theorem(ScanRange),
    /// (2x)⁶ − 1 = p²q²a³
    Corollary(ScanRange),
}

#[derive(Subcommand, Debug)]
enum SolveCommand {
    /// u² + s·u + 1 = k·v³ for k ∈ {1, 3}
    Quadcubic {
        /// Sign of the linear term (+1 or -1); both when omitted
        #[arg(long, allow_negative_numbers = true)]
        s: Option<i64>,
        /// Cube coefficient (1 or 3)
        #[arg(long)]
        k: i64,
        /// Search |u| ≤ BOUND
        #[arg(long)]
        bound: i128,
        /// Mark the set as complete (no solutions beyond the bound are known)
        #[arg(long)]
        assume_complete: bool,
    },
    /// Integer points of y² = x³ + k
    Mordell {
        #[arg(long, allow_negative_numbers = true)]
        k: i128,
        /// Search |x| ≤ BOUND
        #[arg(long)]
        bound: i128,
    },
    /// u³ − v³ = d for d ∈ {1, 2}
    Cubediff {
        #[arg(long, allow_negative_numbers = true)]
        d: i128,
    },
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Outcome {
    rendered: Rendered,
    parameters: serde_json::Value,
    exit: u8,
}

fn outcome<T: Serialize>(result: &T, csv: Csv, parameters: serde_json::Value, exit: u8) -> Outcome {
    Outcome { rendered: Rendered { json: canonical_json(result), csv }, parameters, exit }
}

#[derive(Serialize)]
struct PowerfulList {
    limit: u64,
    count: usize,
    values: Vec<u64>,
}

#[derive(Serialize)]
struct PowerfulRuns {
    limit: u64,
    run_length: u64,
    starts: Vec<u64>,
}

fn cmd_powerful(limit: u64, run: Option<u64>) -> Result<Outcome, Failure> {
    let params = json!({ "limit": limit, "run": run });
    match run {
        None => {
            let values = powerful_up_to(limit)?;
            let mut csv = Csv::new(&["n"]);
            for v in &values {
                csv.row(vec![v.to_string()]);
            }
            Ok(outcome(&PowerfulList { limit, count: values.len(), values }, csv, params, 0))
        }
        Some(run_length) => {
            let starts = consecutive_runs(limit, run_length as usize)?;
            let mut csv = Csv::new(&["start"]);
            for s in &starts {
                csv.row(vec![s.to_string()]);
            }
            let exit = if run_length >= 3 && !starts.is_empty() { EXIT_COUNTEREXAMPLE } else { 0 };
            Ok(outcome(&PowerfulRuns { limit, run_length, starts }, csv, params, exit))
        }
    }
}

fn resolve_jobs(jobs: usize) -> usize {
    if jobs > 0 {
        jobs
    } else {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }
}

fn scan_csv(report: &SearchReport) -> Csv {
    let mut csv = Csv::new(&["metric", "value"]);
    let s = &report.statistics;
    let mut put = |k: String, v: u64| csv.row(vec![k, v.to_string()]);
    put("values_scanned".into(), s.values_scanned);
    put("counterexamples".into(), report.counterexamples.len() as u64);
    for (reason, n) in &s.rejections {
        put(format!("rejected.{reason}"), *n);
    }
    for (side, n) in &s.by_side {
        put(format!("side.{}", canonical_json(side).trim_matches('"')), *n);
    }
    for (case, n) in &s.by_case {
        put(format!("case.{}", canonical_json(case).trim_matches('"')), *n);
    }
    put("coprime_checks".into(), s.coprime_checks);
    put("coprime_failures".into(), s.coprime_failures);
    csv
}

fn cmd_scan(kind: &ScanCommand, quiet: bool) -> Result<Outcome, Failure> {
    let (name, range) = match kind {
        ScanCommand::Theorem(r) => ("theorem", r),
        ScanCommand::Corollary(r) => ("corollary", r),
    };
    let jobs = resolve_jobs(range.jobs);
    let last_pct = AtomicU64::new(0);
    let progress = |done: u64, total: u64| {
        let pct = done * 100 / total;
        if last_pct.fetch_max(pct, Ordering::Relaxed) < pct && pct % 5 == 0 {
            eprintln!("scan {name}: {pct}% ({done}/{total})");
        }
    };
    let opts = ScanOptions { jobs, progress: if quiet { None } else { Some(&progress) }, ..ScanOptions::default() };
    let report = match kind {
        ScanCommand::Theorem(_) => theorem_scan(range.from, range.to, &opts)?,
        ScanCommand::Corollary(_) => corollary_scan(range.from, range.to, &opts)?,
    };
    let params = json!({ "kind": name, "from": range.from, "to": range.to, "jobs": jobs });
    let exit = if report.counterexamples.is_empty() { 0 } else { EXIT_COUNTEREXAMPLE };
    if !quiet {
        for c in &report.counterexamples {
            let x = match c {
                Counterexample::Theorem { trace } => trace.x,
                Counterexample::Corollary { x, .. } => *x,
            };
            eprintln!("counterexample at x = {x}");
        }
    }
    Ok(outcome(&report, scan_csv(&report), params, exit))
}

#[derive(Serialize)]
struct QuadCubicResult {
    sets: Vec<QuadCubicSolutionSet>,
}

#[derive(Serialize)]
struct MordellResult {
    k: i128,
    x_bound: i128,
    points: Vec<Point>,
}

#[derive(Serialize)]
struct Point {
    x: i128,
    y: i128,
}

#[derive(Serialize)]
struct CubeDiffResult {
    d: i128,
    solutions: Vec<UV>,
}

#[derive(Serialize)]
struct UV {
    u: i128,
    v: i128,
}

fn unsupported(e: Error) -> Failure {
    match e {
        Error::Unsupported(msg) => Failure::Usage(msg),
        other => Failure::Core(other),
    }
}

fn cmd_solve(equation: &SolveCommand) -> Result<Outcome, Failure> {
    match *equation {
        SolveCommand::Quadcubic { s, k, bound, assume_complete } => {
            let coeff = CubeCoeff::try_from(k).map_err(unsupported)?;
            let signs = match s {
                Some(s) => vec![QuadSign::try_from(s).map_err(unsupported)?],
                None => vec![QuadSign::Plus, QuadSign::Minus],
            };
            let mut sets = Vec::new();
            let mut csv = Csv::new(&["s", "k", "u", "v"]);
            for sign in signs {
                let set = solve_quad_cubic(sign, coeff, bound, assume_complete)?;
                for &(u, v) in &set.solutions {
                    csv.row(vec![sign.value().to_string(), k.to_string(), u.to_string(), v.to_string()]);
                }
                sets.push(set);
            }
            let params = json!({ "equation": "quadcubic", "s": s, "k": k, "bound": bound.to_string(),
                                 "assume_complete": assume_complete });
            Ok(outcome(&QuadCubicResult { sets }, csv, params, 0))
        }
        SolveCommand::Mordell { k, bound } => {
            let curve = MordellCurve::new(k)?;
            let points: Vec<Point> =
                mordell_points(curve, bound)?.into_iter().map(|p| Point { x: p.x, y: p.y }).collect();
            let mut csv = Csv::new(&["x", "y"]);
            for p in &points {
                csv.row(vec![p.x.to_string(), p.y.to_string()]);
            }
            let params = json!({ "equation": "mordell", "k": k.to_string(), "bound": bound.to_string() });
            Ok(outcome(&MordellResult { k, x_bound: bound, points }, csv, params, 0))
        }
        SolveCommand::Cubediff { d } => {
            let solutions: Vec<UV> =
                cube_diff_solutions(d).map_err(unsupported)?.into_iter().map(|(u, v)| UV { u, v }).collect();
            let mut csv = Csv::new(&["u", "v"]);
            for s in &solutions {
                csv.row(vec![s.u.to_string(), s.v.to_string()]);
            }
            let params = json!({ "equation": "cubediff", "d": d.to_string() });
            Ok(outcome(&CubeDiffResult { d, solutions }, csv, params, 0))
        }
    }
}

fn cmd_trace(x: i64) -> Result<Outcome, Failure> {
    let trace = trace_case(x)?;
    let mut csv = Csv::new(&["branch", "hypothesis_holds", "closed_by"]);
    for b in &trace.branches {
        let closed = b.closed_by.map_or(String::new(), |r| r.to_string());
        csv.row(vec![b.label.clone(), b.hypothesis_holds.to_string(), closed]);
    }
    let exit = match trace.verdict {
        Verdict::Counterexample => EXIT_COUNTEREXAMPLE,
        Verdict::Rejected { .. } => 0,
    };
    Ok(outcome(&trace, csv, json!({ "x": x }), exit))
}

fn cmd_verify() -> Result<Outcome, Failure> {
    let report = verify_lemmas();
    let mut csv = Csv::new(&["check", "cases", "failures"]);
    for c in &report.checks {
        csv.row(vec![c.name.clone(), c.cases.to_string(), c.failures.to_string()]);
    }
    let exit = if report.all_passed { 0 } else { EXIT_VERIFY_FAILED };
    Ok(outcome(&report, csv, json!({}), exit))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Powerful { limit, run } => cmd_powerful(*limit, *run),
        Command::Scan { kind } => cmd_scan(kind, cli.common.quiet),
        Command::Solve { equation } => cmd_solve(equation),
        Command::Trace { x } => cmd_trace(*x),
        Command::VerifyLemmas => cmd_verify(),
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::RangeOverflow { .. } | Error::NotAnInstance(_) | Error::OutsideHypotheses(_) => {
            EXIT_DATA
        }
        Error::Unsupported(_) => EXIT_USAGE,
        Error::CrossCheck(_) => EXIT_SOFTWARE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };

    let invocation = Invocation {
        command_line: std::env::args().collect(),
        parameters: serde_json::Value::Null,
        started: Utc::now(),
    };
    let clock = Instant::now();
    let result = match run(&cli) {
        Ok(out) => out,
        Err(Failure::Core(e)) => {
            eprintln!("ptl: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("ptl: usage error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let invocation = Invocation { parameters: result.parameters.clone(), ..invocation };
    let text = invocation.finish(&result.rendered, clock.elapsed(), cli.common.format);
    if let Err(e) = emit(&text, cli.common.out.as_deref()) {
        eprintln!("ptl: cannot write output: {e}");
        return ExitCode::from(EXIT_IO);
    }
    ExitCode::from(result.exit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_valid() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_arguments_parse() {
        let cli = Cli::try_parse_from(["ptl", "scan", "theorem", "--from", "-1000", "--to", "1000"]).unwrap();
        assert!(matches!(cli.command, Command::Scan { kind: ScanCommand::Theorem(ScanRange { from: -1000, .. }) }));
        let cli = Cli::try_parse_from(["ptl", "trace", "-4"]).unwrap();
        assert!(matches!(cli.command, Command::Trace { x: -4 }));
        let cli = Cli::try_parse_from(["ptl", "solve", "quadcubic", "--s", "+1", "--k", "3", "--bound", "10"]).unwrap();
        assert!(matches!(cli.command, Command::Solve { equation: SolveCommand::Quadcubic { s: Some(1), .. } }));
    }
}
