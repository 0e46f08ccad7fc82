use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = qess::Cli::parse();
    match qess::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qess: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
