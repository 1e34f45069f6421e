// Growing countably based sub-Cu-semigroups around a seed.

use cusg::dimension::DimBounds;
use cusg::subcu;
use cusg::{Carrier, Elem};

pub fn run_example() {
    let g = subcu::gen_countably_based_sub(&Carrier::Nbar, &[Elem::INF], 100).unwrap();
    println!("around inf: {} (sub-Cu: {})", g.sub, g.verdict.is_sub_cu);

    let c = cusg::carrier::direct_sum(&Carrier::chain(2), &Carrier::chain(1));
    let seed = [c.elements().unwrap()[4].clone()];
    let r = subcu::gen_sub_with_dim(&c, &seed, 0, DimBounds::default(), 64).unwrap();
    println!("around {} in C_2 ⊕ C_1: {} after {} rounds", seed[0], r.sub, r.rounds);
    assert!(r.check.is_yes());

    for n in 0..=1 {
        let rep = subcu::char_dim_finite(&c, n).unwrap();
        println!("n={n}: dim ≤ n {}, every subset extends {}", rep.dim_at_most, rep.every_subset_extends);
    }
}

fn main() {
    run_example();
}
