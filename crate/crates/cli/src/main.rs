use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use nijenhuis_cli::{batch, render_batch_text, render_text, run, Command, JobSpec, DEFAULT_FAMILY_DEGREE};
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Mode {
    CheckLeibniz,
    ClassifyTensor,
    Contract,
    Double,
    CheckCourant,
    CheckDirac,
    CheckDiracNijenhuis,
    CheckBialgebroidNijenhuis,
    CheckTheorem2,
    CheckTheorem3,
    CheckLemma2,
    CheckPn,
    CheckPresymplecticN,
    CheckLambdaOmega,
    CheckTrivialBialgebroid,
    /// Run every job of a JSON manifest `{"jobs": [...]}`.
    Batch,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

/// Exact checks for Nijenhuis tensors on Leibniz algebras and Courant algebroids.
///
/// Exit status: 0 all checks pass, 1 a check failed, 2 input error.
#[derive(Parser, Debug)]
#[command(name = "nijenhuis", version)]
struct Cli {
    command: Mode,
    /// Input file, repeat for commands taking several.
    #[arg(short, long = "input", value_name = "FILE")]
    input: Vec<PathBuf>,
    /// Maximal coefficient degree of the polynomial test family.
    #[arg(long, default_value_t = DEFAULT_FAMILY_DEGREE)]
    family_degree: u32,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Report destination; for `contract` and `double` the emitted structure.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Text => text(),
        Format::Json => nijenhuis::json::to_string(value),
    }
}

fn write(path: Option<&PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, String> {
    if cli.command == Mode::Batch {
        let [manifest] = cli.input.as_slice() else {
            return Err("batch takes exactly one manifest file".into());
        };
        let b = batch(manifest)?;
        write(cli.output.as_ref(), &render(cli.format, &b, || render_batch_text(&b)))?;
        return Ok(b.status());
    }
    let name = cli.command.to_possible_value().expect("listed").get_name().to_string();
    let command = Command::from_str(&name, false).expect("modes mirror commands");
    let job = JobSpec {
        command,
        inputs: cli.input.clone(),
        family_degree: cli.family_degree,
    };
    let report = run(&job);
    let emits = matches!(command, Command::Contract | Command::Double);
    match (&report.artifact, emits, cli.output.as_ref()) {
        (Some(artifact), true, Some(path)) => {
            write(Some(path), &nijenhuis::json::to_string(artifact))?;
            write(None, &render(cli.format, &report, || render_text(&report)))?;
        }
        _ => write(cli.output.as_ref(), &render(cli.format, &report, || render_text(&report)))?,
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    Ok(report.status())
}
