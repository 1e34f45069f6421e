// Ideals, quotients and the dimension bounds they satisfy.

use cusg::dimension::{self, DEFAULT_MAX_N};
use cusg::Carrier;

pub fn run_example() {
    let c = cusg::carrier::direct_sum(&Carrier::chain(1), &Carrier::chain(2));
    for ideal in dimension::enumerate_ideals(&c).unwrap() {
        let q = dimension::quotient(&c, &ideal).unwrap();
        println!("ideal {:?}: quotient has {} classes", ideal.members, q.carrier.table().unwrap().len());
    }
    let report = dimension::verify_permanence(&c, DEFAULT_MAX_N).unwrap();
    for e in &report.ideals {
        println!("  {:?}: dim I = {:?}, dim S/I = {:?}", e.members, e.dim_ideal, e.dim_quotient);
    }
    assert!(report.holds);
}

fn main() {
    run_example();
}
