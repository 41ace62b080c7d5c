use std::process::ExitCode;

use clap::Parser;
use swapsafe::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&outcome.report).expect("report serializes")
            );
            for line in &outcome.summary {
                eprintln!("{line}");
            }
            for notice in &outcome.report.notices {
                eprintln!("note: {notice}");
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
