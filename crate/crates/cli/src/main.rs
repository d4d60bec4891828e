mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use output::{CliError, Outcome};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    let result = std::panic::catch_unwind(|| commands::run(&cli));
    let code = match result {
        Ok(Ok(Outcome::Ok)) => 0,
        Ok(Ok(Outcome::Failed)) => 1,
        Ok(Err(e)) => {
            report_error(&e, json);
            e.exit_code()
        }
        Err(_) => {
            report_error(&CliError::Internal("panic during computation".into()), json);
            3
        }
    };
    ExitCode::from(code)
}

fn report_error(e: &CliError, json: bool) {
    if json {
        println!("{}", serde_json::json!({"status": "error", "exit_code": e.exit_code(), "error": e.to_string()}));
    } else {
        eprintln!("modseries: {e}");
    }
}
