use std::io;
use std::process::ExitCode;

use clap::Parser;
use voronoi_distill::cli::{exit_code, run, Cli, Registries};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(&cli, &Registries::default(), &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
