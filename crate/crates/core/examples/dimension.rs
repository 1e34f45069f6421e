// Covering dimension of small tables, with a witness and a counterexample.

use cusg::dimension::{self, DimBounds, DimOutcome};
use cusg::{Carrier, FiniteCuTable};

pub fn run_example() {
    let b = DimBounds::default();
    for m in 1..=4 {
        println!("dim(C_{m}) = {:?}", dimension::dim(&Carrier::chain(m), 3, b).unwrap());
    }

    let check = dimension::check_dim_at_most(&Carrier::chain(2), 0, b, true).unwrap();
    let w = check.witnesses.last().unwrap();
    println!("C_2 witness: x'={} x={} ys={:?} z={:?}", w.x_prime, w.x, w.ys, w.z);
    assert!(w.verify(&Carrier::chain(2)));

    // three atoms whose pairwise joins are the top: one colour is not enough
    let join = |x: usize, y: usize| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        (x, y) if x == y => x,
        _ => 4,
    };
    let m3 = Carrier::finite(FiniteCuTable::from_fns(5, join, |x, y| join(x, y) == y).unwrap()).unwrap();
    let zero = dimension::check_dim_at_most(&m3, 0, b, false).unwrap();
    if let DimOutcome::No { counterexample } = &zero.outcome {
        println!("M3: dim ≤ 0 fails at x={} ys={:?}", counterexample.x, counterexample.ys);
    }
    println!("dim(M3) = {:?}", dimension::dim(&m3, 3, b).unwrap());

    let sum = dimension::verify_sum_permanence(&Carrier::chain(2), &m3, 3, b).unwrap();
    println!("dim(C_2 ⊕ M3) = {:?}", sum.dim_sum);
    assert!(sum.holds);
}

fn main() {
    run_example();
}
