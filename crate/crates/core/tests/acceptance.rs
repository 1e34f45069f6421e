//! Runs the eleven acceptance criteria and prints one line for each. Built
//! without the test harness so the lines show on every `cargo test`.
//!
//! Pinned tolerances: every criterion is exact (zero violations, exact
//! dimension equality). Random tables use `RANDOM_SEED` and
//! `RANDOM_TABLES`; query corpora use `QueryBounds::default()`.

use std::process::ExitCode;

use cusg::selftest::{self, run_one};

fn main() -> ExitCode {
    assert_eq!(selftest::RANDOM_TABLES, 500);
    let results: Vec<_> = (1..=11).map(run_one).collect();
    for c in &results {
        println!("{}", c.line);
    }
    let failed: Vec<u8> = results.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    if failed.is_empty() {
        println!("acceptance: 11/11 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
