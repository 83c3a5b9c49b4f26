use std::process::ExitCode;

use clap::Parser;
use cmkdv::cli::{output_target, run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = match std::env::var("CMKDV_SEED") {
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(v) => v,
            Err(_) => {
                eprintln!("CMKDV_SEED must be an unsigned integer, got `{s}`");
                return ExitCode::from(EXIT_USAGE as u8);
            }
        },
        Err(_) => 0,
    };
    let outcome = run(&cli, seed);
    let (format, out) = output_target(&cli);
    let text = outcome.render(format);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.exit as u8)
}
