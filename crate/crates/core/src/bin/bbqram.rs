use std::io::Write;
use std::process::ExitCode;

use bbqram_prep::cli::{run, Cli, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cfg = RunConfig::from(Cli::parse());
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let result = run(&cfg, &mut stdout.lock(), &mut stderr.lock());
    let _ = stdout.lock().flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
