// Closures, derived sets and the kernel δ on N̄ and on a small chain.

use cusg::carrier::NbarSet;
use cusg::subcu::{self, SubMonoidRepr};
use cusg::{Carrier, ExtNat};

pub fn run_example() {
    let nbar = Carrier::Nbar;
    let seed = subcu::nbar_elems(&[ExtNat::Fin(2), ExtNat::Fin(3)]);
    let gen = subcu::generated_submonoid(&nbar, &seed, 1_000).unwrap();
    let sup = subcu::sup_closure(&nbar, &gen, 64).unwrap();
    println!("generated by 2,3: {gen}; sup-closure: {sup}");

    let zero_inf = SubMonoidRepr::nbar(NbarSet::zero().with_inf(true));
    let v = subcu::is_sub_cu(&nbar, &zero_inf).unwrap();
    println!("{{0,inf}} sub-Cu: {} (derived set {})", v.is_sub_cu, subcu::derived(&nbar, &zero_inf).unwrap());

    let d = subcu::delta(&nbar, &zero_inf, 64).unwrap();
    println!("δ({{0,inf}}) = {} after {} rounds", d.set, d.iterations);

    let evens = SubMonoidRepr::nbar(NbarSet::multiples(2).with_inf(true));
    let threes = SubMonoidRepr::nbar(NbarSet::multiples(3).with_inf(true));
    let pair = [evens, threes];
    println!("meet: {}", subcu::lattice_inf(&nbar, &pair, 64).unwrap());
    println!("join: {}", subcu::lattice_sup(&nbar, &pair, 64).unwrap());

    let c3 = Carrier::chain(3);
    let all: Vec<String> = subcu::enumerate_sub_cu(&c3).unwrap().iter().map(ToString::to_string).collect();
    println!("sub-Cu semigroups of C_3: {}", all.join(" "));
}

fn main() {
    run_example();
}
