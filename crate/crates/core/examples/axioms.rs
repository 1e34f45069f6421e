// Checks every axiom on a few carriers, replaying each failure witness.

use cusg::axioms::{self, Axiom, BasisRepr, Mode};
use cusg::{Carrier, FiniteCuTable};

fn m3() -> Carrier {
    let join = |x: usize, y: usize| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        (x, y) if x == y => x,
        _ => 4,
    };
    Carrier::finite(FiniteCuTable::from_fns(5, join, |x, y| join(x, y) == y).unwrap()).unwrap()
}

pub fn run_example() {
    for (name, c) in [("nbar", Carrier::Nbar), ("chain:3", Carrier::chain(3)), ("M3", m3())] {
        let basis = BasisRepr::default_for(&c);
        for a in Axiom::ALL {
            let (mode, b) = if a.has_basis_form() { (Mode::Basis, Some(&basis)) } else { (Mode::Direct, None) };
            let v = axioms::check_axiom(&c, a, mode, b, 2_000).unwrap().verdict;
            println!("{name:8} {a:5} {}", v.label());
            if let Some(w) = v.witness() {
                assert!(axioms::replay(&c, a, mode, w).unwrap(), "witness for {a} must replay");
            }
        }
    }
}

fn main() {
    run_example();
}
