use std::io::Write;
use std::process::ExitCode;

use casimir_wedge_cli::cli::Cli;
use casimir_wedge_cli::run::execute;
use casimir_wedge_cli::{CliError, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap reserves status 2 for usage errors; here 2 means numerical failure
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprint!("{}", e.report());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.common.config {
        config = config.overlay(RunConfig::from_file(path)?);
    }
    let job = config.overlay(cli.to_config()).resolve()?;
    let outcome = execute(&job)?;
    let text = outcome.document.render(job.common.format);
    match &cli.common.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(outcome.status)
}
