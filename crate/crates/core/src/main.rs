use std::process::ExitCode;

use clap::Parser;
use metric_gh::cli::{run, Cli};
use metric_gh::io::GhReport;
use metric_gh::Error;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Error::BudgetExceeded { best } = &e {
                let partial = GhReport::from(best.as_ref());
                println!("{}", serde_json::to_string_pretty(&partial).expect("report serializes"));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
