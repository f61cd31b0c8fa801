//! `purity`: trajectories, oscillation reports and threshold maps for a qubit
//! purified by repeated measurements of a coupled partner.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::config::{CommandKind, Format, Measured, RunConfig};
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "purity", version, about)]
struct Cli {
    /// JSON file mirroring the run configuration; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Purity after each measurement.
    Simulate(SimulateArgs),
    /// Oscillation predicates and monotonicity thresholds.
    Analyze(AnalyzeArgs),
    /// Monotonicity threshold map over p_up and x = 2·ετ/π.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Bohr frequency in units of the coupling.
    #[arg(long)]
    omega_over_eps: Option<f64>,
    /// Interval between measurements in units of 1/ε.
    #[arg(long)]
    eps_tau: Option<f64>,
    /// Bloch angle of the measured partner state, in [0, π].
    #[arg(long)]
    theta: Option<f64>,
    /// Initial population of |↑⟩.
    #[arg(long)]
    p_up: Option<f64>,
    /// Real part of ⟨↑|ρ₀|↓⟩.
    #[arg(long)]
    coh_re: Option<f64>,
    /// Imaginary part of ⟨↑|ρ₀|↓⟩.
    #[arg(long)]
    coh_im: Option<f64>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file, `-` for stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of measurements.
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct AnalyzeArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    p_lo: Option<f64>,
    #[arg(long)]
    p_hi: Option<f64>,
    #[arg(long)]
    x_lo: Option<f64>,
    #[arg(long)]
    x_hi: Option<f64>,
    #[arg(long)]
    np: Option<usize>,
    #[arg(long)]
    nx: Option<usize>,
    /// Clamp for the reported η; the raw value is kept in `eta_raw`.
    #[arg(long)]
    eta_cap: Option<f64>,
    /// State in which the partner is found at every measurement.
    #[arg(long, value_enum)]
    measured: Option<Measured>,
    #[command(flatten)]
    output: OutputArgs,
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl ModelArgs {
    fn apply(self, cfg: &mut RunConfig) {
        set(&mut cfg.model.omega_over_eps, self.omega_over_eps);
        set(&mut cfg.model.eps_tau, self.eps_tau);
        set(&mut cfg.model.theta, self.theta);
        set(&mut cfg.rho0.p_up, self.p_up);
        set(&mut cfg.rho0.coh_re, self.coh_re);
        set(&mut cfg.rho0.coh_im, self.coh_im);
    }
}

impl OutputArgs {
    fn apply(self, cfg: &mut RunConfig) {
        set(&mut cfg.output.format, self.format);
        if self.out.is_some() {
            cfg.output.path = self.out;
        }
    }
}

fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Some(Command::Simulate(args)) => {
            cfg.command = Some(CommandKind::Simulate);
            args.model.apply(&mut cfg);
            set(&mut cfg.steps, args.steps);
            args.output.apply(&mut cfg);
        }
        Some(Command::Analyze(args)) => {
            cfg.command = Some(CommandKind::Analyze);
            args.model.apply(&mut cfg);
            args.output.apply(&mut cfg);
        }
        Some(Command::Sweep(args)) => {
            cfg.command = Some(CommandKind::Sweep);
            let grid = &mut cfg.grid;
            set(&mut grid.p_lo, args.p_lo);
            set(&mut grid.p_hi, args.p_hi);
            set(&mut grid.x_lo, args.x_lo);
            set(&mut grid.x_hi, args.x_hi);
            set(&mut grid.np, args.np);
            set(&mut grid.nx, args.nx);
            set(&mut grid.eta_cap, args.eta_cap);
            set(&mut grid.measured, args.measured);
            args.output.apply(&mut cfg);
        }
        None => {}
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = resolve(cli)?;
    let command = cfg.validate()?;
    let table = match command {
        CommandKind::Simulate => commands::simulate(&cfg)?,
        CommandKind::Analyze => commands::analyze(&cfg)?,
        CommandKind::Sweep => commands::sweep(&cfg)?,
    };
    let meta = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": cfg,
    });
    let text = output::render(&table, cfg.output.format, meta);
    let path = cfg.output.path.as_deref().expect("validated");
    output::write_output(path, &text)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("purity: {e}");
            e.exit_code()
        }
    }
}
