use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Numerical laboratory for the S-matrix of the exponential potential.
#[derive(Debug, Parser)]
#[command(name = "smx", version)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Range parameter a of the potential.
    #[arg(
        long,
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub a: f64,
    /// Strength alpha = 2a sqrt(U0).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long = "format", global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub output_format: OutputFormat,
    /// Write to this file instead of standard output.
    #[arg(long = "out", global = true)]
    pub output_path: Option<PathBuf>,
    /// Significant digits of floating-point output.
    #[arg(
        long = "precision",
        global = true,
        default_value_t = 15,
        value_parser = clap::value_parser!(u8).range(6..=17)
    )]
    pub precision_digits: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HeisenbergMethod {
    Residue,
    Contour,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound states with their normalisation data.
    BoundStates,
    /// Heisenberg-condition ratios R_H per bound state.
    Heisenberg {
        #[arg(long, value_enum, default_value_t = HeisenbergMethod::Residue)]
        method: HeisenbergMethod,
    },
    /// Bound-state branches kappa(alpha) with R_H over an alpha sweep.
    Figure1 {
        #[arg(long, default_value_t = 0.5)]
        alpha_min: f64,
        #[arg(long, default_value_t = 15.0)]
        alpha_max: f64,
        #[arg(long, default_value_t = 291)]
        steps: usize,
    },
    /// S-matrix and Jost functions at one complex momentum.
    SEval {
        #[arg(long, allow_negative_numbers = true)]
        k_re: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        k_im: f64,
    },
    /// Redundant-pole residues and the redundant-pole sum.
    Redundant {
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        /// r + r' in the redundant-pole sum.
        #[arg(long, default_value_t = 1.0)]
        r_sum: f64,
        /// Number of poles in the partial sum.
        #[arg(long, default_value_t = 50)]
        terms: u32,
    },
}
