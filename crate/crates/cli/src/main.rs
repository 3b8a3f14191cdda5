mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use expo_scatter::Error as LibError;

use config::{Cli, OutputFormat};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] LibError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(e) => match e {
                LibError::InvalidArgument(_) => 2,
                LibError::PoleProximity { .. }
                | LibError::EvaluationAtOrigin
                | LibError::SingularAtRedundantZeroPoint { .. }
                | LibError::CoincidentPhysicalPole { .. }
                | LibError::PoleOnContour { .. } => 3,
                _ => 1,
            },
            CliError::Io(_) => 1,
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let report = commands::run(&cli.run, &cli.command)?;
    let digits = cli.run.precision_digits as usize;
    let text = match cli.run.output_format {
        OutputFormat::Csv => output::render_csv(&report.table, digits),
        OutputFormat::Json => {
            output::render_json(report.params, &report.table, report.diagnostics, digits)
        }
    };
    match &cli.run.output_path {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("smx: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
