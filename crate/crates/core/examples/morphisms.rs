// Validating maps between carriers.

use cusg::approx::{self, MapRule, MorphismFlags};
use cusg::{Carrier, Elem};

fn show(f: &MorphismFlags) -> String {
    let parts = [
        ("monoid", &f.monoid),
        ("order", &f.order),
        ("sup", &f.sup),
        ("waybelow", &f.waybelow),
        ("embedding", &f.order_embedding),
    ];
    parts.iter().map(|(n, v)| format!("{n}={}", v.label())).collect::<Vec<_>>().join(" ")
}

pub fn run_example() {
    let double = approx::doubling_on_nbar(500).unwrap();
    println!("x ↦ 2x on N̄: {}", show(&double.flags));

    let scale = approx::chain_scaling(2, 2).unwrap();
    println!("C_2 → C_4 scaling: Cu-morphism {}", scale.flags.is_cu_morphism());

    // sends 2 = 1+1 to 1, while f(1)+f(1) = 2
    let collapse = approx::validate_morphism(&Carrier::chain(2), &Carrier::chain(2), MapRule::Table { images: [0, 1, 1].map(Elem::Idx).to_vec() }, 0);
    match collapse {
        Ok(f) => println!("collapse: {}", show(&f.flags)),
        Err(e) => println!("collapse rejected: {e}"),
    }
}

fn main() {
    run_example();
}
