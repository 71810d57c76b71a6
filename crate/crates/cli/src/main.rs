//! `modalid`: simulate modal backbones, build targets, and identify
//! coefficients with a seeded multi-objective search.

mod commands;
mod config;
mod error;
mod geometry;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use modalid_core::IntegrationMode;

use crate::config::Overrides;

#[derive(Debug, Parser)]
#[command(name = "modalid", version, about = "Modal coefficient identification for continuum robot backbones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct CoeffArgs {
    /// x-bending coefficients, comma separated (degree 0 first)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0,0")]
    pub cx: Vec<f64>,
    /// y-bending coefficients, comma separated (degree 0 first)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0,0")]
    pub cy: Vec<f64>,
}

#[derive(Debug, Args, Clone)]
pub struct ShapeArgs {
    /// Backbone length L
    #[arg(long, default_value_t = 1.0)]
    pub length: f64,
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Division count n used by the shape objective
    #[arg(long = "n-divisions", default_value_t = 8)]
    pub n_divisions: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a backbone and write its geometry file
    Simulate {
        #[command(flatten)]
        coeffs: CoeffArgs,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long, default_value = "paper-script")]
        mode: IntegrationMode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Create or import a target configuration
    #[command(subcommand)]
    Target(TargetCommand),
    /// Run the evolutionary search against a target
    Identify {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        generations: Option<usize>,
        #[arg(long = "generation-size")]
        generation_size: Option<usize>,
        #[arg(long)]
        crossover: Option<f64>,
        #[arg(long)]
        mutation: Option<f64>,
        /// Uniform gene bounds as `lo,hi`
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        bounds: Option<Vec<f64>>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long = "n-divisions")]
        n_divisions: Option<usize>,
    },
    /// Print both objectives for coefficients or a geometry file against a target
    Eval {
        #[arg(long)]
        target: PathBuf,
        #[command(flatten)]
        coeffs: CoeffArgs,
        /// Evaluate a geometry file instead of coefficients
        #[arg(long)]
        geometry: Option<PathBuf>,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long, default_value = "paper-script")]
        mode: IntegrationMode,
        /// Expected division count; must match the target
        #[arg(long = "n-divisions")]
        n_divisions: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum TargetCommand {
    /// Synthetic target from known coefficients
    Synth {
        #[command(flatten)]
        coeffs: CoeffArgs,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Gaussian noise on division points, as a fraction of L·scale
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Import division points from CSV (n+1 point rows then one TCP row) or a target file
    Import {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

fn dispatch(cli: Cli) -> error::CliResult<()> {
    match cli.command {
        Command::Simulate { coeffs, shape, samples, mode, out } => commands::simulate(&coeffs, &shape, samples, mode, &out),
        Command::Target(TargetCommand::Synth { coeffs, shape, noise, seed, samples, out }) => {
            commands::target_synth(&coeffs, &shape, noise, seed, samples, &out)
        }
        Command::Target(TargetCommand::Import { input, shape, out }) => commands::target_import(&input, &shape, &out),
        Command::Identify {
            target,
            config,
            out,
            seed,
            generations,
            generation_size,
            crossover,
            mutation,
            bounds,
            samples,
            n_divisions,
        } => {
            let bounds = match bounds.as_deref() {
                None => None,
                Some([lo, hi]) => Some((*lo, *hi)),
                Some(_) => return Err(error::CliError::validation("--bounds expects `lo,hi`")),
            };
            let flags = Overrides {
                seed,
                generations,
                generation_size,
                crossover,
                mutation,
                bounds,
                samples,
                n_divisions,
            };
            commands::identify(&target, config.as_deref(), &out, &flags)
        }
        Command::Eval { target, coeffs, geometry, samples, mode, n_divisions } => {
            commands::eval(&target, &coeffs, geometry.as_deref(), samples, mode, n_divisions)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
