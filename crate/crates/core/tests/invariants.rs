//! Algebraic laws checked on random inputs.

use cusg::carrier::enumerate::random_valid_tables;
use cusg::carrier::NbarSet;
use cusg::cli::format::{parse_table, serialize_table};
use cusg::dimension::{self, DimBounds};
use cusg::subcu::{self, SubMonoidRepr};
use cusg::Carrier;
use proptest::prelude::*;

fn nbar_set() -> impl Strategy<Value = NbarSet> {
    (prop::collection::vec(any::<bool>(), 0..8), prop::collection::vec(any::<bool>(), 1..4), any::<bool>())
        .prop_map(|(head, tail, inf)| NbarSet::from_parts(head, tail, inf))
}

fn sub(s: NbarSet) -> SubMonoidRepr {
    SubMonoidRepr::nbar(s)
}

fn nbar_set_of(t: &SubMonoidRepr) -> NbarSet {
    t.nbar_set().unwrap().clone()
}

fn generated(s: NbarSet) -> SubMonoidRepr {
    subcu::generated_submonoid(&Carrier::Nbar, &sub(s), 10_000).unwrap()
}

fn random_table(seed: u64) -> Carrier {
    Carrier::finite_unchecked(random_valid_tables(1, 5, seed).pop().unwrap())
}

proptest! {
    #[test]
    fn derived_is_monotone_and_additive(a in nbar_set(), b in nbar_set()) {
        let c = Carrier::Nbar;
        let da = nbar_set_of(&subcu::derived(&c, &sub(a.clone())).unwrap());
        let db = nbar_set_of(&subcu::derived(&c, &sub(b.clone())).unwrap());
        let dab = nbar_set_of(&subcu::derived(&c, &sub(a.union(&b))).unwrap());
        prop_assert_eq!(&dab, &da.union(&db));
        if a.is_subset(&b) {
            prop_assert!(da.is_subset(&db));
        }
    }

    #[test]
    fn sup_closure_is_a_closure(a in nbar_set(), b in nbar_set()) {
        let c = Carrier::Nbar;
        let t = generated(a.clone());
        let u = generated(a.union(&b));
        let ct = subcu::sup_closure(&c, &t, 64).unwrap();
        prop_assert!(t.is_subset(&ct));
        prop_assert!(subcu::sup_closure(&c, &ct, 64).unwrap().same_set(&ct));
        prop_assert!(ct.is_subset(&subcu::sup_closure(&c, &u, 64).unwrap()));
    }

    #[test]
    fn delta_is_a_kernel(a in nbar_set(), b in nbar_set()) {
        let c = Carrier::Nbar;
        let t = generated(a.clone());
        let u = generated(a.union(&b));
        let d = subcu::delta(&c, &t, 64).unwrap();
        prop_assume!(d.stabilized);
        prop_assert!(subcu::is_sub_cu(&c, &d.set).unwrap().is_sub_cu);
        prop_assert!(subcu::delta(&c, &d.set, 64).unwrap().set.same_set(&d.set));
        prop_assert!(d.set.is_subset(&subcu::sup_closure(&c, &t, 64).unwrap()));
        prop_assert!(d.set.is_subset(&subcu::delta(&c, &u, 64).unwrap().set));
    }

    #[test]
    fn sub_cu_forms_agree(a in nbar_set()) {
        let c = Carrier::Nbar;
        let v = subcu::is_sub_cu(&c, &generated(a)).unwrap();
        prop_assert!(v.agree);
    }

    #[test]
    fn lattice_bounds(a in nbar_set(), b in nbar_set()) {
        let c = Carrier::Nbar;
        let (x, y) = (subcu::delta(&c, &generated(a), 64).unwrap().set, subcu::delta(&c, &generated(b), 64).unwrap().set);
        let pair = [x.clone(), y.clone()];
        let join = subcu::lattice_sup(&c, &pair, 64).unwrap();
        let meet = subcu::lattice_inf(&c, &pair, 64).unwrap();
        prop_assert!(x.is_subset(&join) && y.is_subset(&join));
        prop_assert!(meet.is_subset(&x) && meet.is_subset(&y));
    }

    #[test]
    fn tables_round_trip(seed in any::<u64>()) {
        let c = random_table(seed);
        let t = c.table().unwrap();
        let text = serialize_table(t);
        prop_assert_eq!(&parse_table(&text).unwrap(), t);
    }

    #[test]
    fn dimension_checks_are_monotone_in_n(seed in any::<u64>()) {
        let c = random_table(seed);
        let b = DimBounds::default();
        let verdicts: Vec<bool> = (0..=2).map(|n| dimension::check_dim_at_most(&c, n, b, false).unwrap().is_yes()).collect();
        prop_assert!(verdicts.windows(2).all(|w| !w[0] || w[1]), "{:?}", verdicts);
    }

    #[test]
    fn table_witnesses_replay(seed in any::<u64>()) {
        let c = random_table(seed);
        let r = dimension::check_dim_at_most(&c, 1, DimBounds::default(), true).unwrap();
        prop_assert!(r.witnesses.iter().all(|w| w.verify(&c)));
    }
}
