use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use jac_cli::commands::max_n_from_env;
use jac_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match max_n_from_env().and_then(|m| run(&cli, m)) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
