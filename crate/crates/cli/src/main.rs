use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tiltstab_cli::args::{resolve, Action, Cli};
use tiltstab_cli::{execute, CliError};

fn run(cli: Cli) -> Result<String, CliError> {
    let cfg = match resolve(cli.command)? {
        Action::PrintConfig(cfg) => return Ok(cfg.to_json() + "\n"),
        Action::Execute(cfg) => cfg,
    };
    let rendered = execute(&cfg)?;
    for (path, body) in &rendered.files {
        std::fs::write(path, body).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(rendered.stdout)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .is_err()
            {
                return ExitCode::from(6);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("tiltstab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
