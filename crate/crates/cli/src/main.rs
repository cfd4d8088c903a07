use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use harmsphere_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(outcome.text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("harmsphere: one or more checks failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("harmsphere: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
