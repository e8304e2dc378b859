mod config;
mod error;
mod output;
mod precision;
mod run;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use config::{Cli, Command, JobConfig, SCHEMA_VERSION};
use error::{CliError, EXIT_OK, EXIT_USAGE};
use run::Output;

fn load_job(cli: Cli) -> Result<(Command, Option<std::path::PathBuf>), CliError> {
    match (cli.config, cli.command) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either --config or a subcommand, not both".into())),
        (None, None) => Err(CliError::Usage("no subcommand given; see --help".into())),
        (None, Some(cmd)) => Ok((cmd, cli.output)),
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path)?;
            let raw: serde_json::Value = serde_json::from_str(&text)?;
            let job: JobConfig = serde_json::from_value(raw.clone())?;
            let known = serde_json::to_value(&job)?;
            if let (Some(given), Some(known)) = (raw.as_object(), known.as_object()) {
                if let Some(k) = given.keys().find(|k| !known.contains_key(*k)) {
                    return Err(CliError::Usage(format!("unknown field {k:?} in job file")));
                }
            }
            if let Some(v) = job.schema_version {
                if v > SCHEMA_VERSION {
                    return Err(CliError::Usage(format!(
                        "job schema version {v} is newer than {SCHEMA_VERSION}"
                    )));
                }
            }
            Ok((job.command, cli.output.or(job.output)))
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let (command, out_path) = load_job(cli)?;
    let bits = precision::precision_from_env()?;
    let mut notices = Vec::new();
    let out = match &command {
        Command::Analyze(a) => run::analyze(a),
        Command::Decompose(a) => run::decompose(a),
        Command::PfSystem(a) => run::pf_system(a),
        Command::ScalarOde(a) => run::scalar_ode_cmd(a),
        Command::CountZeros(a) => run::count_zeros(a, &mut notices),
        Command::Verify(a) => run::verify(a, bits),
        Command::Periods(a) => run::periods(a),
        Command::Bounds(a) => run::bounds(a),
    };
    for n in &notices {
        eprintln!("{n}");
    }
    let text = match out? {
        Output::Json(v) => output::to_canonical_json(&v),
        Output::Csv(s) => s,
    };
    match out_path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK as u8),
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::from(EXIT_OK as u8),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
