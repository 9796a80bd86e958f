use std::io::Write;
use std::process::ExitCode;

use dualmode_cli::cli::{parse, Parsed, OUTPUT_DIR_ENV};
use dualmode_cli::commands::run;
use dualmode_cli::error::CliError;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match try_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dualmode: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn try_main() -> Result<(), CliError> {
    let spec = match parse(std::env::args_os(), std::env::var(OUTPUT_DIR_ENV).ok())? {
        Parsed::Print(text) => {
            print!("{text}");
            return Ok(());
        }
        Parsed::Run(spec) => spec,
    };
    if let Some(text) = run(&spec)? {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).map_err(|e| CliError::io("stdout", e))?;
    }
    Ok(())
}
