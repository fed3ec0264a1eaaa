use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use patcalc::commands::{execute, Command};
use patcalc::workspace::Workspace;

/// Finite-category computer algebra for cartesian patterns.
#[derive(Debug, Parser)]
#[command(name = "patcalc", version)]
struct Cli {
    /// Workspace file of declarations to resolve names against.
    #[arg(short, long, global = true)]
    file: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Truncation level for builtins named without one.
    #[arg(long, global = true, env = "PATCALC_LEVEL", default_value_t = 3)]
    level: usize,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ws = match &cli.file {
        None => Workspace::default(),
        Some(path) => {
            let loaded = std::fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))
                .and_then(|text| Workspace::parse(&text).map_err(|e| format!("{}: {e}", path.display())));
            match loaded {
                Ok(ws) => ws,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    };
    let out = execute(&ws, &cli.command, cli.level);
    if cli.json {
        println!("{}", out.to_json());
    } else {
        print!("{}", out.to_text());
    }
    ExitCode::from(out.status.exit_code() as u8)
}
