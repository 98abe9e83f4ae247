use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use deltahall::cli::{error_exit_code, run, write_output, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = match run(&args) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_exit_code(&e));
        }
    };
    match write_output(&args, &outcome) {
        Ok(Some(text)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_exit_code(&e));
        }
    }
    eprintln!("{}", outcome.summary);
    ExitCode::from(outcome.exit_code())
}
