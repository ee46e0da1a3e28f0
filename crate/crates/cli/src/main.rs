use std::process::ExitCode;

use ratemeta_cli::config::parse_config;
use ratemeta_cli::run::run_scenario;
use ratemeta_cli::{CliError, USAGE};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") {
        print!("{USAGE}");
        return ExitCode::SUCCESS;
    }

    let config = match parse_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            eprintln!("run with --help for usage");
            return ExitCode::from(2);
        }
    };

    match run_scenario(&config) {
        Ok(report) => {
            print!("{}", report.render());
            println!("curves written to {}", config.out_dir.display());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
