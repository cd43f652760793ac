use std::process::ExitCode;

use hyperrect::selftest::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    // `cargo test -- --list` only enumerates
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut failed = Vec::new();
    for &(id, ..) in CRITERIA.iter() {
        match run_criterion(id) {
            Ok(report) => {
                println!("{}", report.line());
                if !report.passed {
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("criterion {id} FAIL: {e}");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria passed", CRITERIA.len(), CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
