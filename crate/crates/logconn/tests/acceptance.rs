//! Runs the ten acceptance criteria on INST-A and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use logconn::curve::CurveInstance;
use logconn::suite::run_all;

fn main() -> ExitCode {
    let start = Instant::now();
    let reports = run_all(&CurveInstance::inst_a());
    for r in &reports {
        println!("{}", r.line());
        for f in r.failures.iter().take(5) {
            println!("    {}: {}", f.name, f.value.as_deref().unwrap_or(""));
        }
    }
    println!("acceptance: {} of {} criteria passed in {:.1?}", reports.iter().filter(|r| r.pass).count(), reports.len(), start.elapsed());
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
