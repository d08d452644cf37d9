use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use bvw::{load, run, truncation, Cli, CliError, Format, Report, EXIT_CHECK_FAILED, EXIT_ERROR, TRUNCATION_VAR};

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let path = cli.model.as_ref().ok_or_else(|| CliError::Usage("--model FILE is required".into()))?;
    let src = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let var = std::env::var(TRUNCATION_VAR).ok();
    let loaded = load(&src, truncation(var.as_deref())?)?;
    run(&cli.command, &loaded)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Text => report.text(),
                Format::JsonLines => report.json_line(),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_ERROR as u8);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
