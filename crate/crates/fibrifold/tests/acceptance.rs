use std::process::ExitCode;
use std::time::Instant;

use fibrifold::build_catalog;
use fibrifold::checks::run_all;

fn main() -> ExitCode {
    let start = Instant::now();
    let catalog = build_catalog();
    let outcomes = run_all(&catalog);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("{} of {} criteria pass ({:.1}s)", outcomes.len() - failed, outcomes.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
