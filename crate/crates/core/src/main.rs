use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use residual::cli::{error_exit_code, run_command, RunConfig, EXIT_USAGE};

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match run_command(&cfg, &mut out) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
