//! Command-line front end for the continuous-variable link library:
//! `run` simulates one configuration, `sweep` evaluates a parameter grid,
//! and `verify` executes the built-in verification suite.

pub mod checks;
pub mod commands;
pub mod config;
pub mod csvio;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::{RawShared, Scheme};

#[derive(Parser)]
#[command(
    name = "cvlink",
    version,
    about = "Gaussian simulation of entanglement links over lossy channels",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Simulate one configuration and emit its trajectory as CSV.
    Run(SharedArgs),
    /// Evaluate a parameter grid (or, with --envelope, the best-r curve) as CSV.
    Sweep(SweepArgs),
    /// Run the verification suite and report each criterion as PASS or FAIL.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SharedArgs {
    /// Scheme to evaluate: asymmetric, symmetric, epr, or polygamy.
    #[arg(value_name = "SCHEME")]
    scheme_pos: Option<Scheme>,
    /// Scheme, as a flag instead of the positional argument.
    #[arg(long, value_name = "SCHEME")]
    scheme: Option<Scheme>,
    /// Line loss fraction, 0 <= epsilon < 1 (epr also accepts 1).
    #[arg(long)]
    epsilon: Option<f64>,
    /// Squeezed-variance ratio of the light source (r > 0; 1 = coherent).
    #[arg(long)]
    r: Option<f64>,
    /// Coupling rate kappa^2 in inverse time units (default 1).
    #[arg(long)]
    kappa2: Option<f64>,
    /// Integration step; default keeps tau * kappa^2 = 1e-4.
    #[arg(long)]
    tau: Option<f64>,
    /// Total interaction time for run, or a finite horizon for sweep.
    #[arg(long)]
    t: Option<f64>,
    /// Where to write the CSV: a file path, or "stdout" (the default).
    #[arg(long, value_name = "PATH|stdout")]
    out: Option<String>,
    /// Epsilon grid for sweep as lo:hi:n, linearly spaced.
    #[arg(long, value_name = "LO:HI:N")]
    grid_eps: Option<String>,
    /// r grid for sweep as lo:hi:n, log spaced.
    #[arg(long, value_name = "LO:HI:N")]
    grid_r: Option<String>,
    /// Number of receiver sites in the polygamy splitter tree (default 2).
    #[arg(long)]
    m_sites: Option<usize>,
    /// Config file with one "key = value" per line; flags take precedence.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Evaluate sweep columns at this finite time instead of the asymptotic
    /// closed forms.
    #[arg(long, value_name = "TIME")]
    asymptotic_time: Option<f64>,
}

impl SharedArgs {
    fn into_raw(self) -> RawShared {
        RawShared {
            scheme_pos: self.scheme_pos,
            scheme: self.scheme,
            epsilon: self.epsilon,
            r: self.r,
            kappa2: self.kappa2,
            tau: self.tau,
            t: self.t,
            out: self.out,
            grid_eps: self.grid_eps,
            grid_r: self.grid_r,
            m_sites: self.m_sites,
            config: self.config,
            asymptotic_time: self.asymptotic_time,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    shared: SharedArgs,
    /// Emit the optimal-r envelope (one row per epsilon) instead of the grid.
    #[arg(long)]
    envelope: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only criteria whose title contains this substring.
    #[arg(long, value_name = "SUBSTRING")]
    only: Option<String>,
    /// Also print the numerical adjudication tables for the two model
    /// questions.
    #[arg(long)]
    adjudicate: bool,
}

fn write_out(out: Option<&str>, text: &str) -> i32 {
    match out {
        None | Some("stdout") => {
            print!("{text}");
            0
        }
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => 0,
            Err(err) => {
                eprintln!("error: cannot write {path}: {err}");
                2
            }
        },
    }
}

fn run_resolved(args: SharedArgs, f: impl FnOnce(&commands::Effective) -> Result<String, String>) -> i32 {
    let raw = args.into_raw();
    let eff = match commands::resolve(&raw) {
        Ok(eff) => eff,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    match f(&eff) {
        Ok(text) => write_out(eff.out.as_deref(), &text),
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// Parses the command line and dispatches; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.exit_code() == 0 { 0 } else { 2 };
            let _ = err.print();
            return code;
        }
    };
    match cli.cmd {
        Cmd::Run(args) => run_resolved(args, commands::run::execute),
        Cmd::Sweep(args) => {
            let envelope = args.envelope;
            run_resolved(args.shared, |eff| commands::sweep::execute(eff, envelope))
        }
        Cmd::Verify(args) => commands::verify::execute(args.only.as_deref(), args.adjudicate),
    }
}
