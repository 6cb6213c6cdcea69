use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = coopbc::Cli::parse();
    let echo = std::env::args().collect::<Vec<_>>().join(" ");
    match coopbc::run(&cli, &echo) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
