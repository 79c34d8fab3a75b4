//! `torus-nash`: Fourier analysis and Nash-flow dynamics of periodic min-max
//! costs on the torus.

mod commands;
mod field;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use torus_nash::{Error, FlowKind, TorusPoint, TrigMode};

use crate::commands::*;
use crate::field::GanArgs;

const EXIT_FAILURE: u8 = 1;
const EXIT_EXHAUSTED: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "torus-nash", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier coefficient table of a field, sorted by magnitude.
    Coeffs {
        /// `gan` or a polynomial JSON file.
        field: String,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 10)]
        max_freq: u32,
        /// Keep constant and single-axis modes in the table.
        #[arg(long)]
        all_modes: bool,
        #[command(flatten)]
        gan: GanArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Classify the critical points of a polynomial or a two-term family.
    Classify {
        /// Polynomial JSON file (alternative to --lead/--mu/--pert).
        poly: Option<PathBuf>,
        /// Leading mode as m1,m2,alpha,beta.
        #[arg(long)]
        lead: Option<TrigMode>,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<f64>,
        /// Perturbing mode as m1,m2,alpha,beta.
        #[arg(long)]
        pert: Option<TrigMode>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Integrate one trajectory.
    Flow {
        field: String,
        #[arg(long, default_value = "nash")]
        flow: FlowKind,
        /// Start point as theta1,theta2.
        #[arg(long, default_value = "0.1,0.1", value_parser = parse_point)]
        seed: TorusPoint,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[command(flatten)]
        gan: GanArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Phase portrait as SVG and CSV.
    Portrait {
        field: String,
        #[arg(long, default_value = "nash")]
        flow: FlowKind,
        #[arg(long, default_value_t = 8)]
        seed_grid: usize,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[command(flatten)]
        gan: GanArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Leading Fourier modes of the toy GAN cost.
    GanTable {
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 10)]
        max_freq: u32,
        #[arg(long, default_value_t = 10)]
        rows: usize,
        #[command(flatten)]
        gan: GanArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Spectrum, truncation and classification until no centers remain.
    Pipeline {
        field: String,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 10)]
        max_freq: u32,
        #[arg(long, default_value_t = 8)]
        max_s: usize,
        #[command(flatten)]
        gan: GanArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn parse_point(s: &str) -> Result<TorusPoint, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("expected theta1,theta2; got {s:?}"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(TorusPoint::new(num(a)?, num(b)?))
}

fn run(cmd: Command) -> anyhow::Result<u8> {
    match cmd {
        Command::Coeffs {
            field,
            grid,
            max_freq,
            all_modes,
            gan,
            out,
        } => coeffs(CoeffsArgs {
            field,
            grid,
            max_freq,
            all_modes,
            gan,
            out,
        }),
        Command::Classify {
            poly,
            lead,
            mu,
            pert,
            out,
        } => classify(ClassifyArgs {
            poly,
            lead,
            mu,
            pert,
            out,
        }),
        Command::Flow {
            field,
            flow: kind,
            seed,
            dt,
            steps,
            gan,
            out,
        } => flow(FlowArgs {
            field,
            flow: kind,
            seed,
            dt,
            steps,
            gan,
            out,
        }),
        Command::Portrait {
            field,
            flow,
            seed_grid,
            dt,
            steps,
            gan,
            out,
        } => portrait_cmd(PortraitArgs {
            field,
            flow,
            seed_grid,
            dt,
            steps,
            gan,
            out,
        }),
        Command::GanTable {
            grid,
            max_freq,
            rows,
            gan,
            out,
        } => gan_table(GanTableArgs {
            grid,
            max_freq,
            rows,
            gan,
            out,
        }),
        Command::Pipeline {
            field,
            grid,
            max_freq,
            max_s,
            gan,
            out,
        } => pipeline_cmd(PipelineArgs {
            field,
            grid,
            max_freq,
            max_s,
            gan,
            out,
        }),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Exhausted { .. }) => EXIT_EXHAUSTED,
        Some(
            Error::NoConvergence { .. } | Error::LeftBasin { .. } | Error::SingularHessian { .. },
        ) => EXIT_NO_CONVERGENCE,
        Some(Error::DegenerateSign(_)) => EXIT_DEFERRED,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
