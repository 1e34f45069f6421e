// The built-in carriers and what the CLI calls them.

use std::path::Path;

use cusg::carrier::oracle::check_o1_to_o4;
use cusg::cli::registry::{registry, resolve};

pub fn run_example() {
    for e in registry() {
        println!("{:22} {}", e.name, e.description);
    }
    for name in ["nbar", "chain:2", "sum:chain:1+chain:1", "mono:antichain:2", "mono:chain:2"] {
        let c = resolve(name, Path::new(".")).unwrap();
        let report = check_o1_to_o4(&c, 200);
        let status = if report.certified() {
            "certified"
        } else if report.any_failure() {
            "refuted"
        } else {
            "no failure up to fuel"
        };
        println!("{name:20} {:16} {status}", c.describe());
    }
}

fn main() {
    run_example();
}
