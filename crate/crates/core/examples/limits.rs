// Limits of chains of tables and the approximation property.

use cusg::approx::{self, ApproxFamily, ChainSystem, QueryBounds, TransferProperty};
use cusg::axioms::Axiom;
use cusg::dimension::DimBounds;
use cusg::Carrier;

pub fn run_example() {
    let bounds = QueryBounds::default();
    for len in 1..=4 {
        let (lim, report) = approx::build_limit(&ChainSystem::doubling_chains(len).unwrap(), bounds).unwrap();
        println!(
            "{len} stages: {} threads, limit has {} elements, all checks hold: {}",
            report.threads,
            lim.carrier.table().unwrap().len(),
            report.all_hold()
        );
    }

    let id = ApproxFamily::identity(&Carrier::chain(3), 0).unwrap();
    let r = approx::check_approximates(&id, bounds, 0).unwrap();
    println!("identity on C_3: {}/{} queries answered", r.answered, r.queries);

    for p in [TransferProperty::Axiom(Axiom::O6), TransferProperty::Dim] {
        let t = approx::transfer_check(&id, p, 0, DimBounds::default()).unwrap();
        println!("transfer {p}: {}", t.holds);
    }
}

fn main() {
    run_example();
}
