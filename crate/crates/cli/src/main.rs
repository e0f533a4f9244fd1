use std::io::Write;
use std::process::ExitCode;

use gkm_cli::{execute, parse_args, EXIT_USAGE};

fn main() -> ExitCode {
    let plan = match parse_args(std::env::args_os().skip(1)) {
        Ok(plan) => plan,
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let outcome = execute(&plan);
    eprint!("{}", outcome.diagnostic);
    if !outcome.output.is_empty() {
        let written = match &plan.output {
            Some(path) => std::fs::write(path, &outcome.output),
            None => std::io::stdout().write_all(outcome.output.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    ExitCode::from(outcome.status as u8)
}
