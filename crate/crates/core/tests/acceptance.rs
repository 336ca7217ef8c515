//! The ten acceptance criteria, one line each. Runs without the test harness so the lines
//! always show, and exits non-zero if any criterion fails its checks or its time limit.

use std::process::ExitCode;

use lisa::battery::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let results = run_all(DEFAULT_SEED);
    println!();
    for c in &results {
        println!("{}", c.line());
    }
    let failed: Vec<_> = results.iter().filter(|c| !c.ok()).collect();
    for c in &failed {
        eprintln!("criterion {} details: {}", c.id, serde_json::to_string_pretty(&c.details).unwrap());
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
