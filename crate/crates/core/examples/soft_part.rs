// Soft elements and the dimension of the soft part.

use cusg::axioms;
use cusg::dimension::{self, DimBounds};
use cusg::Carrier;

pub fn run_example() {
    let part = axioms::soft_part(&Carrier::Nbar, 2_000).unwrap();
    let shown: Vec<String> = part.elements.iter().map(ToString::to_string).collect();
    println!("soft part of N̄: {{{}}}", shown.join(","));

    let r = dimension::soft_dim_bounds(&Carrier::Nbar, 2, DimBounds { width: 3, fuel: 2_000 }).unwrap();
    println!("dim soft = {:?}, dim = {:?}, bounds hold: {}", r.dim_soft, r.dim, r.lower && r.upper);

    let c = Carrier::chain(3);
    let part = axioms::soft_part(&c, 0).unwrap();
    println!("soft elements of C_3: {}", part.elements.len());
}

fn main() {
    run_example();
}
