use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;
use scheme_forge::cli::{self, Cli};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let parsed = Cli::parse();
    cli::configure_threads();
    let outcome = match cli::run(&parsed) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", outcome.stdout);
    for (path, bytes) in &outcome.files {
        if let Err(e) = std::fs::write(path, bytes) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if let Some(path) = &parsed.emit_manifest {
        let stamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
        let manifest = cli::manifest_for(&cli::strip_manifest_flag(&argv[1..]), &outcome, stamp);
        if let Err(e) = std::fs::write(path, manifest.to_json() + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(outcome.exit_code as u8)
}
