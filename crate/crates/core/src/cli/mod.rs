//! Batch front end: parse a problem file, run the engine or the oracle, check, report.

mod parse;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use parse::{parse_polynomial, parse_problem, ParseError, ProblemFile};

use crate::engine::{incremental_f5, Budget, CallDegrees, Config, F5Error, F5Run, Stats};
use crate::oracle::{buchberger, ideal_equal, run_harvest, sample_marks, HarvestReport};
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::trace::{standard_checks, write_jsonl, CheckReport, ClassifyScope, TraceEvent};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Largest considered-pair count for which the pair classification runs.
pub const CLASSIFY_PAIR_LIMIT: usize = 5000;

#[derive(Debug, Parser)]
#[command(
    name = "f5",
    version,
    about = "Incremental F5 Groebner bases over GF(p) with checkers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a Groebner basis with F5.
    Gb(RunArgs),
    /// Compute the reduced Groebner basis with the reference Buchberger engine.
    Oracle(RunArgs),
    /// F5, the oracle, every trace checker and sampled representation descents.
    Check(RunArgs),
    /// Representation descents on chosen or sampled insertion snapshots.
    Descend(DescendArgs),
    /// Like `gb`, writing the JSON Lines event log to --trace-out.
    Trace(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Problem file.
    pub problem: PathBuf,
    /// Monomial order, overriding the file: degrevlex, deglex or lex.
    #[arg(long)]
    pub order: Option<String>,
    /// Stop with exit code 3 once more critical pairs than this are created.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_pairs: usize,
    /// Stop with exit code 3 beyond this pair degree.
    #[arg(long, default_value_t = 80)]
    pub max_degree: u32,
    /// Number of insertion snapshots sampled for descents.
    #[arg(long, default_value_t = 25)]
    pub descent_samples: usize,
    /// Step cap per descent.
    #[arg(long, default_value_t = 100_000)]
    pub descent_cap: usize,
    /// Descent instances per snapshot; larger snapshots are sampled.
    #[arg(long, default_value_t = 100)]
    pub descent_instances: usize,
    /// Accept non-homogeneous input (the engine still rejects it).
    #[arg(long)]
    pub allow_affine: bool,
    /// Seed for snapshot and instance sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON Lines event log here.
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
    /// Write a JSON summary of the run here.
    #[arg(long)]
    pub json_report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DescendArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Position of the inserted polynomial whose snapshot to use.
    #[arg(long)]
    pub g: Option<usize>,
    /// Position of the multiplied member; requires --g.
    #[arg(long, requires = "g")]
    pub h: Option<usize>,
    /// Multiplier monomial such as `x*y^2`; defaults to 1.
    #[arg(long, requires = "h")]
    pub mult: Option<String>,
}

/// Machine-readable summary of one command.
#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub prime: u32,
    pub order: String,
    pub vars: Vec<String>,
    pub basis_size: usize,
    pub basis: Vec<String>,
    pub heads: Vec<String>,
    pub stats: Option<Stats>,
    pub d_histories: Vec<CallDegrees>,
    pub budget: Option<Budget>,
    pub ideal_equal: Option<bool>,
    pub checks: Vec<CheckReport>,
    pub descent: Option<HarvestReport>,
    pub passed: bool,
    pub elapsed_ms: u128,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("unknown monomial order '{0}'")]
    Order(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(F5Error),
    #[error(transparent)]
    Trace(#[from] crate::trace::TraceError),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

/// Parses arguments from the process and runs; returns the exit code.
pub fn main_with_args() -> i32 {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(&cli, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let started = Instant::now();
    let (name, args) = match &cli.command {
        Command::Gb(a) => ("gb", a),
        Command::Oracle(a) => ("oracle", a),
        Command::Check(a) => ("check", a),
        Command::Trace(a) => ("trace", a),
        Command::Descend(d) => ("descend", &d.run),
    };
    let mut report = RunReport {
        command: name.to_string(),
        ..Default::default()
    };
    let code = match execute(cli, args, &mut report, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    };
    report.elapsed_ms = started.elapsed().as_millis();
    if let Some(path) = &args.json_report {
        let written = serde_json::to_string_pretty(&report)
            .map_err(CliError::from)
            .and_then(|s| {
                fs::write(path, s + "\n").map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })
            });
        if let Err(e) = written {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    }
    code
}

fn load(args: &RunArgs) -> Result<ProblemFile, CliError> {
    let order = match &args.order {
        Some(s) => Some(MonomialOrder::parse(s).ok_or_else(|| CliError::Order(s.clone()))?),
        None => None,
    };
    let text = fs::read_to_string(&args.problem).map_err(|source| CliError::Io {
        path: args.problem.clone(),
        source,
    })?;
    parse_problem(&text, order, args.allow_affine).map_err(|source| CliError::Parse {
        path: args.problem.clone(),
        source,
    })
}

fn config(args: &RunArgs) -> Config {
    Config {
        max_pairs: args.max_pairs,
        max_degree: args.max_degree,
        ..Config::default()
    }
}

fn write_events(path: &Path, events: &[TraceEvent]) -> Result<(), CliError> {
    let file = fs::File::create(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_jsonl(events, BufWriter::new(file))?;
    Ok(())
}

fn fill_basis(report: &mut RunReport, pf: &ProblemFile, basis: &[Polynomial]) {
    report.basis_size = basis.len();
    report.basis = basis
        .iter()
        .map(|p| p.display_with(&pf.vars).to_string())
        .collect();
    report.heads = basis
        .iter()
        .map(|p| {
            p.head_monomial()
                .unwrap()
                .display_with(&pf.vars)
                .to_string()
        })
        .collect();
}

fn print_basis(out: &mut dyn Write, report: &RunReport) -> io::Result<()> {
    writeln!(out, "basis: {} polynomials", report.basis_size)?;
    for p in &report.basis {
        writeln!(out, "  {p}")?;
    }
    writeln!(out, "heads: {}", report.heads.join(", "))
}

fn print_run(out: &mut dyn Write, run: &F5Run) -> io::Result<()> {
    let s = &run.stats;
    writeln!(
        out,
        "pairs: {} created, {} F5-rejected, {} rewritten-rejected",
        s.pairs_created, s.f5_rejected, s.rewritten_rejected
    )?;
    writeln!(
        out,
        "polynomials: {} S-polynomials, {} from top reduction, {} reduction steps, {} reductions to zero",
        s.spols, s.new_from_top_reduction, s.reduction_steps, s.zero_reductions
    )?;
    for c in &run.d_histories {
        writeln!(out, "degrees of call {}: {:?}", c.call, c.ds)?;
    }
    Ok(())
}

fn print_check(out: &mut dyn Write, c: &CheckReport) -> io::Result<()> {
    if c.passed() {
        writeln!(out, "check {}: ok ({} checked)", c.name, c.checked)
    } else {
        writeln!(
            out,
            "check {}: FAILED ({} of {} checked)",
            c.name, c.failure_count, c.checked
        )?;
        for f in &c.failures {
            writeln!(out, "    {f}")?;
        }
        Ok(())
    }
}

fn print_harvest(out: &mut dyn Write, h: &HarvestReport) -> io::Result<()> {
    writeln!(
        out,
        "descent: {} snapshots, {} instances, {} complete, {} reductors pass (a)-(d), max {} steps",
        h.snapshots, h.instances, h.descents_ok, h.reductors_ok, h.max_steps
    )?;
    writeln!(
        out,
        "dominated pairs: {} found, {} resolved",
        h.dominated_pairs.len(),
        h.dominated_ok
    )?;
    for f in h.failures.iter().take(20) {
        writeln!(out, "    {f}")?;
    }
    Ok(())
}

fn io_err(source: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn execute(
    cli: &Cli,
    args: &RunArgs,
    report: &mut RunReport,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let pf = load(args)?;
    report.prime = pf.ring.field.modulus();
    report.order = pf.ring.order.name().to_string();
    report.vars = pf.vars.clone();

    if let Command::Oracle(_) = cli.command {
        let basis = buchberger(&pf.ring, &pf.polys);
        fill_basis(report, &pf, &basis);
        print_basis(out, report).map_err(io_err)?;
        report.passed = true;
        return Ok(EXIT_OK);
    }

    let run = match incremental_f5(&pf.ring, &pf.polys, &config(args)) {
        Ok(run) => run,
        Err(F5Error::BudgetExceeded { budget, partial }) => {
            report.budget = Some(budget);
            report.stats = Some(partial.stats.clone());
            if let Some(path) = &args.trace_out {
                write_events(path, partial.trace.events())?;
            }
            writeln!(out, "budget exceeded: {budget:?}").map_err(io_err)?;
            return Ok(EXIT_BUDGET);
        }
        Err(e) => return Err(CliError::Engine(e)),
    };
    fill_basis(report, &pf, &run.basis());
    report.stats = Some(run.stats.clone());
    report.d_histories = run.d_histories.clone();
    print_basis(out, report).map_err(io_err)?;
    print_run(out, &run).map_err(io_err)?;
    if let Some(path) = &args.trace_out {
        if !matches!(cli.command, Command::Descend(_)) {
            write_events(path, run.trace.events())?;
        }
    }

    match &cli.command {
        Command::Gb(_) | Command::Trace(_) => {
            report.passed = true;
            Ok(EXIT_OK)
        }
        Command::Check(_) => {
            let eq = ideal_equal(&pf.ring, &run.basis(), &pf.polys);
            report.ideal_equal = Some(eq);
            writeln!(out, "ideal_equal: {eq}").map_err(io_err)?;
            report.checks = standard_checks(&run, ClassifyScope::UpToPairs(CLASSIFY_PAIR_LIMIT))?;
            for c in &report.checks {
                print_check(out, c).map_err(io_err)?;
            }
            let marks = sample_marks(run.marks.len(), args.descent_samples, args.seed);
            let h = run_harvest(
                &run,
                &marks,
                args.descent_cap,
                args.descent_instances,
                args.seed,
            );
            print_harvest(out, &h).map_err(io_err)?;
            let failures = report.checks.iter().map(|c| c.failure_count).sum::<usize>()
                + h.failures.len()
                + usize::from(!eq);
            report.passed = failures == 0;
            report.descent = Some(h);
            writeln!(out, "invariant failures: {failures}").map_err(io_err)?;
            writeln!(
                out,
                "result: {}",
                if report.passed { "pass" } else { "FAIL" }
            )
            .map_err(io_err)?;
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Descend(d) => descend_command(d, &pf, &run, report, out),
        Command::Oracle(_) => unreachable!(),
    }
}

fn descend_command(
    d: &DescendArgs,
    pf: &ProblemFile,
    run: &F5Run,
    report: &mut RunReport,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    use crate::oracle::{descend, GgSnapshot};
    use crate::poly::FieldElement;
    use crate::trace::TraceLog;

    let args = &d.run;
    let marks: Vec<usize> = match d.g {
        Some(g) => vec![run
            .marks
            .iter()
            .position(|m| m.g == g)
            .ok_or_else(|| CliError::Usage(format!("r{g} was never inserted into Done")))?],
        None => sample_marks(run.marks.len(), args.descent_samples, args.seed),
    };
    if let Some(h) = d.h {
        let t = match &d.mult {
            Some(s) => parse_monomial(s, pf)?,
            None => pf.ring.one_monomial(),
        };
        let snap = GgSnapshot::from_mark(run, &run.marks[marks[0]]);
        let mut log = TraceLog::new();
        let code = match descend(FieldElement::ONE, &t, h, &snap, args.descent_cap) {
            Ok(res) => {
                for r in &res.log {
                    writeln!(
                        out,
                        "step {}: {:?} on {:?} * b{} -> {} elements",
                        r.step, r.property, r.mono, r.pos, r.len
                    )
                    .map_err(io_err)?;
                }
                writeln!(out, "final: {:?}", res.representation).map_err(io_err)?;
                for ev in res.events(0) {
                    log.emit(ev);
                }
                report.passed = true;
                EXIT_OK
            }
            Err(e) => {
                writeln!(out, "descent failed: {e}").map_err(io_err)?;
                EXIT_CHECK_FAILED
            }
        };
        if let Some(path) = &args.trace_out {
            write_events(path, log.events())?;
        }
        return Ok(code);
    }
    let h = run_harvest(
        run,
        &marks,
        args.descent_cap,
        args.descent_instances,
        args.seed,
    );
    print_harvest(out, &h).map_err(io_err)?;
    if let Some(path) = &args.trace_out {
        let mut log = TraceLog::new();
        for ev in &h.events {
            log.emit(ev.clone());
        }
        write_events(path, log.events())?;
    }
    report.passed = h.passed();
    report.descent = Some(h);
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn parse_monomial(s: &str, pf: &ProblemFile) -> Result<Monomial, CliError> {
    let p = parse_polynomial(s, &pf.ring, &pf.vars, 1, 0).map_err(|source| CliError::Parse {
        path: PathBuf::from("--mult"),
        source,
    })?;
    match p.terms() {
        [t] => Ok(t.mono.clone()),
        _ => Err(CliError::Usage(format!("'{s}' is not a monomial"))),
    }
}
