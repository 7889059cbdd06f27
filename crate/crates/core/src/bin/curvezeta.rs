use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use curvezeta::cli::{run, Command, JobSpec, DEFAULT_NAIVE_BUDGET};

/// Zeta functions of curves F(x, y) = 0 over prime fields.
#[derive(Parser)]
#[command(name = "curvezeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Numerator of the zeta function of the nonsingular model.
    Zeta(Args),
    /// Point counts of the plane model modulo p^λ.
    Count(Args),
    /// Compute the zeta function and run its self-checks.
    Verify(Args),
}

#[derive(clap::Args)]
struct Args {
    /// The prime p.
    #[arg(long)]
    p: u64,
    /// Polynomial expression, or @file with an expression or `i j c` lines.
    #[arg(long)]
    poly: String,
    /// Largest extension degree r to report.
    #[arg(long)]
    max_r: Option<usize>,
    /// p-adic precision λ.
    #[arg(long)]
    lambda: Option<u32>,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
    /// Largest number p^{2r} of candidate points for naive enumeration.
    #[arg(long, default_value_t = DEFAULT_NAIVE_BUDGET)]
    naive_budget: u128,
    /// Skip validation after `zeta`.
    #[arg(long)]
    no_verify: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, a) = match cli.command {
        Cmd::Zeta(a) => (Command::Zeta, a),
        Cmd::Count(a) => (Command::Count, a),
        Cmd::Verify(a) => (Command::Verify, a),
    };
    let job = JobSpec {
        command,
        p: a.p,
        poly: a.poly,
        max_r: a.max_r,
        lambda: a.lambda,
        json: a.json,
        naive_budget: a.naive_budget,
        verify: !a.no_verify,
    };
    let out = run(&job);
    // a closed pipe on either stream is not an error worth reporting
    if !out.stderr.is_empty() {
        let _ = write!(std::io::stderr(), "{}", out.stderr);
    }
    if !out.stdout.is_empty() {
        let _ = writeln!(std::io::stdout(), "{}", out.stdout);
    }
    ExitCode::from(out.code as u8)
}
