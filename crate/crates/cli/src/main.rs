use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use symdyn_cli::{parse_experiment, run, CliError, Command, Overrides, Report};

/// Run a symbolic-dynamics experiment and write a JSON report.
#[derive(Parser, Debug)]
#[command(name = "symdyn", version)]
struct Args {
    command: Command,
    /// System spec or experiment file (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    horizon: Option<usize>,
    /// Pseudo-orbit accuracy exponent: delta = 2^-m.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    tail: Option<f64>,
    #[arg(long)]
    ratio: Option<f64>,
}

fn execute(args: &Args) -> Result<String, CliError> {
    let input = std::fs::read(&args.spec)
        .map_err(|e| CliError::Validation(format!("{}: {e}", args.spec.display())))?;
    let text = String::from_utf8(input.clone()).map_err(|e| CliError::Validation(format!("spec is not UTF-8: {e}")))?;
    let dir = args.spec.parent().map(PathBuf::from).unwrap_or_default();
    let exp = parse_experiment(&text, &dir)?;
    if let Some(c) = &exp.command {
        if c != args.command.name() {
            return Err(CliError::Validation(format!(
                "spec is for `{c}` but `{}` was requested",
                args.command.name()
            )));
        }
    }
    let over = Overrides {
        seed: args.seed,
        horizon: args.horizon,
        m: args.m,
        theta: args.theta,
        tail: args.tail,
        ratio: args.ratio,
    };
    let start = Instant::now();
    let payload = run(args.command, &exp, &over)?;
    let seconds = start.elapsed().as_secs_f64();
    let report = Report::new(args.command.name(), &input, over.seed.or(exp.seed), seconds, payload);
    Ok(report.to_json())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(json) => {
            let written = match &args.out {
                Some(path) => std::fs::write(path, json + "\n"),
                None => {
                    println!("{json}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
