use std::process::ExitCode;

use clap::Parser;
use hopset_cli::cli::{expand_config, run, Cli};

fn main() -> ExitCode {
    let result = expand_config(std::env::args().collect()).and_then(|argv| run(Cli::parse_from(argv)));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            let record = serde_json::json!({ "status": "error", "error": format!("{err:#}") });
            eprintln!("{record}");
            ExitCode::from(2)
        }
    }
}
