//! The `curvezeta` command: job description, execution and output.

mod parse;

use serde::Serialize;

pub use parse::{load_poly, parse_input, parse_poly, parse_triples, render, ParsedPoly};

use crate::algebra::{BiPoly, PrimeField};
use crate::error::{Error, Result};
pub use crate::naive::{naive_count, DEFAULT_NAIVE_BUDGET};
use crate::trace::{count_plane_model, precision_lambda, TraceParams};
use crate::zeta::{compute_zeta_with, validate, PhaseTimings, ValidationReport, ZetaComputation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Zeta,
    Count,
    Verify,
}

/// One invocation of the tool. `poly` is an expression, a list of `i j c`
/// lines, or `@path` naming a file with either.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub p: u64,
    pub poly: String,
    pub max_r: Option<usize>,
    pub lambda: Option<u32>,
    pub json: bool,
    pub naive_budget: u128,
    pub verify: bool,
}

impl JobSpec {
    pub fn new(command: Command, p: u64, poly: impl Into<String>) -> Self {
        JobSpec {
            command,
            p,
            poly: poly.into(),
            max_r: None,
            lambda: None,
            json: false,
            naive_budget: DEFAULT_NAIVE_BUDGET,
            verify: true,
        }
    }
}

/// Exit status and the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPrime(_) | Error::InvalidArgument(_) | Error::Syntax { .. } | Error::Io(_) => EXIT_INPUT,
        Error::Precondition(_) | Error::BudgetExceeded { .. } => EXIT_PRECONDITION,
        Error::Precision(_) | Error::Invariant(_) => EXIT_VALIDATION,
    }
}

#[derive(Serialize)]
struct ValidationDoc<'a> {
    passed: bool,
    checks: &'a [crate::zeta::CheckResult],
}

#[derive(Serialize)]
struct ZetaDoc<'a> {
    p: u64,
    genus: u64,
    counts: Vec<i128>,
    numerator: &'a [i128],
    timings: PhaseTimings,
    validation: Option<ValidationDoc<'a>>,
}

#[derive(Serialize)]
struct CountDoc {
    p: u64,
    lambda: u32,
    modulus: u64,
    counts: Vec<u64>,
}

/// Runs a job to completion; errors become exit codes with a message on
/// stderr.
pub fn run(job: &JobSpec) -> RunOutput {
    let mut stderr = String::new();
    match execute(job, &mut stderr) {
        Ok((code, stdout)) => RunOutput { code, stdout, stderr },
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            RunOutput {
                code: exit_code(&e),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn execute(job: &JobSpec, stderr: &mut String) -> Result<(i32, String)> {
    let field = PrimeField::new(job.p)?;
    let parsed = load_poly(&job.poly, field)?;
    for w in parsed.warnings() {
        stderr.push_str(&format!("warning: {w}\n"));
    }
    let f = parsed.poly;
    if f.total_degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidArgument(
            "the polynomial must be nonconstant to define a curve".into(),
        ));
    }
    match job.command {
        Command::Count => count_job(job, &f),
        Command::Zeta | Command::Verify => zeta_job(job, &f),
    }
}

fn count_job(job: &JobSpec, f: &BiPoly<PrimeField>) -> Result<(i32, String)> {
    let d = job.max_r.unwrap_or(1);
    if d == 0 {
        return Err(Error::InvalidArgument("--max-r must be at least 1".into()));
    }
    let lambda = match job.lambda {
        Some(l) => l,
        None => {
            let deg = f.total_degree().unwrap() as u64;
            precision_lambda(deg.saturating_sub(1) * deg.saturating_sub(2) / 2, job.p, d as u32)
        }
    };
    let params = TraceParams::with_lambda(job.p, lambda)?;
    let counts = count_plane_model(f, &params, d)?;
    let doc = CountDoc {
        p: job.p,
        lambda,
        modulus: counts.modulus(),
        counts: counts.counts,
    };
    let out = if job.json {
        serde_json::to_string_pretty(&doc).unwrap()
    } else {
        let mut s = format!("plane model counts modulo {}^{}:\n", job.p, lambda);
        for (r, c) in doc.counts.iter().enumerate() {
            s.push_str(&format!("  r = {}: {}\n", r + 1, c));
        }
        s.trim_end().to_string()
    };
    Ok((EXIT_OK, out))
}

fn zeta_job(job: &JobSpec, f: &BiPoly<PrimeField>) -> Result<(i32, String)> {
    let comp = compute_zeta_with(f, job.lambda)?;
    let check = job.command == Command::Verify || job.verify;
    let report = check.then(|| validate(f, &comp, job.naive_budget));
    let code = match &report {
        Some(r) if !r.passed() => EXIT_VALIDATION,
        _ => EXIT_OK,
    };
    let out = if job.json {
        zeta_json(job, &comp, report.as_ref())
    } else {
        zeta_text(job, &comp, report.as_ref())
    };
    Ok((code, out))
}

/// N_1..N_n with n = max(g, max_r); counts past g come from P.
fn reported_counts(job: &JobSpec, comp: &ZetaComputation) -> Vec<i128> {
    let g = comp.zeta.genus as usize;
    let n = job.max_r.unwrap_or(g).max(g);
    (1..=n)
        .map(|r| match comp.counts.counts.get(r - 1) {
            Some(&c) => c,
            None => comp.zeta.predicted_count(r),
        })
        .collect()
}

fn zeta_json(job: &JobSpec, comp: &ZetaComputation, report: Option<&ValidationReport>) -> String {
    let doc = ZetaDoc {
        p: job.p,
        genus: comp.zeta.genus,
        counts: reported_counts(job, comp),
        numerator: &comp.zeta.numerator,
        timings: comp.timings,
        validation: report.map(|r| ValidationDoc {
            passed: r.passed(),
            checks: &r.checks,
        }),
    };
    serde_json::to_string_pretty(&doc).unwrap()
}

fn zeta_text(job: &JobSpec, comp: &ZetaComputation, report: Option<&ValidationReport>) -> String {
    let z = &comp.zeta;
    let mut s = format!("p = {}\ngenus = {}\nP(T) = {}\n", job.p, z.genus, z.render());
    if let Some(params) = &comp.params {
        s.push_str(&format!("precision = {}^{}\n", job.p, params.lambda));
    }
    let counts = reported_counts(job, comp);
    if !counts.is_empty() {
        let list: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
        s.push_str(&format!("counts = {}\n", list.join(", ")));
    }
    let t = comp.timings;
    s.push_str(&format!(
        "timings: powers {:.3}s, traces {:.3}s, corrections {:.3}s\n",
        t.powers.as_secs_f64(),
        t.traces.as_secs_f64(),
        t.corrections.as_secs_f64()
    ));
    if let Some(r) = report {
        s.push_str(&format!("validation: {}\n", if r.passed() { "passed" } else { "FAILED" }));
        for c in &r.checks {
            let observed = c.observed.map_or("-".to_string(), |o| o.to_string());
            s.push_str(&format!(
                "  {} r={}: predicted {}, observed {} ({:?}){}\n",
                c.name,
                c.r,
                c.predicted,
                observed,
                c.status,
                c.note.as_ref().map_or(String::new(), |n| format!(" {n}"))
            ));
        }
    }
    s.trim_end().to_string()
}
