use std::process::ExitCode;

use clap::Parser;

mod cli;
mod commands;
mod output;

fn main() -> ExitCode {
    let args = match cli::Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run_command(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            output::error(&args, &e);
            ExitCode::from(1)
        }
    }
}
