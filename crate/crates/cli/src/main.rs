//! `mussel-th`: Turing-Hopf analysis and delay-PDE simulation of the
//! mussel-algae model from a JSON config.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mussel_th_core::ErrorKind;

mod commands;
mod config;
mod output;

use config::RunConfig;
use output::Out;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] mussel_th_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Hypothesis => 3,
                ErrorKind::Numerical => 4,
            },
        }
    }
}

#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// JSON run config; defaults to the bundled parameter set (A).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory; overrides `out` in the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Equilibrium and hypotheses.
    Analyze,
    /// Critical delays per spatial mode (CSV).
    Hopf {
        #[arg(long)]
        j_max: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Turing threshold over a grid of alpha (CSV).
    Turing,
    /// Turing-Hopf point.
    ThPoint,
    /// Normal-form and amplitude-system coefficients.
    NormalForm,
    /// Region of the unfolding at an offset from the Turing-Hopf point.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        tau_eps: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        d_eps: Option<f64>,
    },
    /// Region map over a rectangle of offsets (CSV).
    Sweep {
        #[arg(long)]
        tau_steps: Option<usize>,
        #[arg(long)]
        d_steps: Option<usize>,
    },
    /// Delay-PDE run with pattern classification (CSV and JSON).
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        tau_eps: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        d_eps: Option<f64>,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long)]
        grid_points: Option<usize>,
    },
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    set(&mut cfg.out, cli.out);
    let name = match &cli.command {
        Command::Analyze => "analyze",
        Command::Hopf { j_max, n_max } => {
            set(&mut cfg.hopf.j_max, *j_max);
            set(&mut cfg.hopf.n_max, *n_max);
            "hopf"
        }
        Command::Turing => "turing",
        Command::ThPoint => "th-point",
        Command::NormalForm => "normal-form",
        Command::Classify { tau_eps, d_eps } => {
            set(&mut cfg.classify.tau_eps, *tau_eps);
            set(&mut cfg.classify.d_eps, *d_eps);
            "classify"
        }
        Command::Sweep { tau_steps, d_steps } => {
            set(&mut cfg.sweep.tau_steps, *tau_steps);
            set(&mut cfg.sweep.d_steps, *d_steps);
            "sweep"
        }
        Command::Simulate { tau_eps, d_eps, horizon, grid_points } => {
            let s = &mut cfg.simulate;
            set(&mut s.tau_eps, *tau_eps);
            set(&mut s.d_eps, *d_eps);
            set(&mut s.sim.horizon, *horizon);
            set(&mut s.sim.grid_points, *grid_points);
            "simulate"
        }
    };
    cfg.validate()?;
    let mut out = Out::new(&cfg.out.clone(), name, &cfg)?;
    match cli.command {
        Command::Analyze => commands::analyze(&cfg, &mut out),
        Command::Hopf { .. } => commands::hopf(&cfg, &mut out),
        Command::Turing => commands::turing(&cfg, &mut out),
        Command::ThPoint => commands::th_point(&cfg, &mut out),
        Command::NormalForm => commands::normal_form(&cfg, &mut out),
        Command::Classify { .. } => commands::classify(&cfg, &mut out),
        Command::Sweep { .. } => commands::sweep(&cfg, &mut out),
        Command::Simulate { .. } => commands::simulate_cmd(&cfg, &mut out),
    }?;
    out.finish()
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
