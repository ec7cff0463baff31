//! Runs every acceptance criterion and prints one line per criterion.
//! Built with `harness = false`, so the lines show without `--nocapture`.

use std::process::ExitCode;

use ultravote::verify::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = std::env::var("ULTRAVOTE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let outcomes = run_all(seed);
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
