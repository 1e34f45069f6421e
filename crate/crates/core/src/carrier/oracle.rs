//! Definitional checks used to guard the closed-form rules: way-below by
//! testing chains, and the structural axioms O1–O4.

use serde::Serialize;

use super::{Carrier, ChainDescr, Elem, ExtNat};
use crate::error::{Error, Result};
use crate::verdict::{search_levels, Budget, Level, Verdict, Witness};

/// Default number of (pair, chain) tests when a catalog carrier is built.
pub const DEFAULT_WAYBELOW_FUEL: u64 = 20_000;

/// The chains tried by the definitional test at a given level.
///
/// Finite carriers only need constant chains, since every increasing
/// sequence there is eventually constant.
pub fn chain_family(carrier: &Carrier, level: u64) -> Vec<ChainDescr> {
    let constant = |e: Elem| ChainDescr::Finite(vec![e]);
    match carrier {
        Carrier::Finite(_) | Carrier::Limit(_) => carrier.elements().expect("finite").into_iter().map(constant).collect(),
        Carrier::Nbar => {
            let mut out: Vec<ChainDescr> = (0..=level).map(|v| constant(Elem::nat(v))).collect();
            for start in 0..=level {
                for step in 1..=level {
                    out.push(ChainDescr::Arithmetic { start, step });
                }
                out.push(ChainDescr::Truncation { base: Elem::nat(start), target: Elem::INF });
            }
            out
        }
        Carrier::NbarSub(s) => {
            let mut out: Vec<ChainDescr> = s.finite_members_upto(level).into_iter().map(|v| constant(Elem::nat(v))).collect();
            if s.has_inf() {
                out.push(constant(Elem::INF));
                if s.finite_part_unbounded() {
                    out.push(carrier.approximating_chain(&Elem::INF));
                }
            }
            out
        }
        Carrier::Mono(_) => {
            let frag = carrier.fragment(level);
            let mut out: Vec<ChainDescr> = frag.iter().cloned().map(constant).collect();
            for target in &frag {
                let has_inf = target.tuple().expect("tuple").iter().any(|c| c.ext() == Some(ExtNat::Inf));
                if !has_inf {
                    continue;
                }
                for base in &frag {
                    if base != target && carrier.leq(base, target) {
                        out.push(ChainDescr::Truncation { base: base.clone(), target: target.clone() });
                    }
                }
            }
            out
        }
        Carrier::Sum(cs) => {
            let families: Vec<Vec<ChainDescr>> = cs.iter().map(|c| chain_family(c, level)).collect();
            let mut out: Vec<Vec<ChainDescr>> = vec![vec![]];
            for fam in &families {
                out = out
                    .into_iter()
                    .flat_map(|prefix| {
                        fam.iter().map(move |d| {
                            let mut p = prefix.clone();
                            p.push(d.clone());
                            p
                        })
                    })
                    .collect();
            }
            out.into_iter().map(ChainDescr::Componentwise).collect()
        }
    }
}

/// Whether the terms of a valid chain are `≥ x` from some index on.
pub fn eventually_dominates(carrier: &Carrier, chain: &ChainDescr, x: &Elem) -> bool {
    match chain {
        ChainDescr::Finite(_) | ChainDescr::EventuallyConstant { .. } => carrier.leq(x, &chain.sup_unchecked(carrier)),
        ChainDescr::Arithmetic { start, step } => match x.ext().expect("extended natural") {
            ExtNat::Fin(v) => *step > 0 || v <= *start,
            ExtNat::Inf => false,
        },
        ChainDescr::Truncation { base, target } => {
            let coords = |e: &Elem| -> Vec<ExtNat> {
                match e {
                    Elem::Ext(v) => vec![*v],
                    Elem::Tuple(v) => v.iter().map(super::ext_of).collect(),
                    Elem::Idx(_) => unreachable!("truncation on a table"),
                }
            };
            let (b, t, x) = (coords(base), coords(target), coords(x));
            x.iter().zip(b.iter().zip(&t)).all(|(&x, (&b, &t))| x <= b || (x.is_finite() && x <= t))
        }
        ChainDescr::Componentwise(ds) => match (carrier, x) {
            (Carrier::Sum(cs), Elem::Tuple(xs)) => {
                cs.iter().zip(ds.iter().zip(xs)).all(|(c, (d, x))| eventually_dominates(c, d, x))
            }
            _ => unreachable!("componentwise chain on a non-sum"),
        },
    }
}

/// `x ≪ y` tested against every chain of the level's family: each chain
/// whose supremum dominates `y` must eventually dominate `x`.
pub fn definitional_waybelow(carrier: &Carrier, x: &Elem, y: &Elem, level: u64) -> bool {
    refuting_chain(carrier, x, y, &chain_family(carrier, level)).is_none()
}

fn refuting_chain<'a>(carrier: &Carrier, x: &Elem, y: &Elem, family: &'a [ChainDescr]) -> Option<&'a ChainDescr> {
    family
        .iter()
        .find(|c| carrier.leq(y, &c.sup_unchecked(carrier)) && !eventually_dominates(carrier, c, x))
}

/// Agreement between a carrier's way-below rule and the chain test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WaybelowReport {
    pub agreement: bool,
    pub pairs_tested: u64,
    pub chains_tested: u64,
    pub level: u64,
    /// `x`, `y` and, when the rule claims `x ≪ y`, the refuting chain's supremum.
    pub discrepancy: Option<Witness>,
}

/// Compares `carrier.waybelow` with [`definitional_waybelow`] on fragments
/// of increasing level until `fuel` pair-chain tests are used.
pub fn validate_waybelow(carrier: &Carrier, fuel: u64) -> Result<WaybelowReport> {
    if fuel == 0 {
        return Err(Error::FuelExhausted(0));
    }
    if matches!(carrier, Carrier::NbarSub(_)) {
        return Err(Error::Unsupported("way-below validation".into(), carrier.describe()));
    }
    let budget = Budget::new(fuel);
    let mut report =
        WaybelowReport { agreement: true, pairs_tested: 0, chains_tested: 0, level: 0, discrepancy: None };
    let max_level = if carrier.is_finite() { 1 } else { u64::MAX };
    let mut level = 1;
    'levels: while level <= max_level {
        let frag = carrier.fragment(level);
        let family = chain_family(carrier, level);
        for x in &frag {
            for y in &frag {
                if !budget.spend(family.len() as u64) {
                    break 'levels;
                }
                report.pairs_tested += 1;
                report.chains_tested += family.len() as u64;
                let claimed = carrier.waybelow(x, y);
                let refuted = refuting_chain(carrier, x, y, &family);
                if claimed == refuted.is_some() {
                    let mut w = Witness::new().with("x", x.clone()).with("y", y.clone());
                    if let Some(c) = refuted {
                        w = w.with("chain_sup", c.sup_unchecked(carrier));
                    }
                    report.agreement = false;
                    report.discrepancy = Some(w);
                    report.level = level;
                    return Ok(report);
                }
            }
        }
        report.level = level;
        level += 1;
    }
    if report.chains_tested == 0 {
        return Err(Error::FuelExhausted(fuel));
    }
    Ok(report)
}

/// Verdicts for O1–O4 plus, on finite carriers, the reduction `≪ = ≤`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub o1: Verdict,
    pub o2: Verdict,
    pub o3: Verdict,
    pub o4: Verdict,
    /// Definitional `≪` against the order; `None` on infinite carriers.
    pub waybelow_is_order: Option<Verdict>,
}

impl StructuralReport {
    /// Every verdict holds outright (finite carriers only).
    pub fn certified(&self) -> bool {
        [&self.o1, &self.o2, &self.o3, &self.o4].iter().all(|v| v.holds())
            && self.waybelow_is_order.as_ref().is_none_or(Verdict::holds)
    }

    pub fn any_failure(&self) -> bool {
        [&self.o1, &self.o2, &self.o3, &self.o4].iter().any(|v| v.is_fail())
            || self.waybelow_is_order.as_ref().is_some_and(Verdict::is_fail)
    }
}

/// O1–O4 by brute force on tables, by sampling fragments otherwise.
pub fn check_o1_to_o4(carrier: &Carrier, fuel: u64) -> StructuralReport {
    match carrier.table() {
        Some(_) => finite_structural(carrier),
        None => sampled_structural(carrier, fuel),
    }
}

/// All strictly increasing chains of a finite carrier, in lexicographic order.
pub fn strict_chains(carrier: &Carrier) -> Vec<Vec<usize>> {
    let t = carrier.table().expect("table");
    let n = t.len();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().expect("non-empty");
        for j in (0..n).rev() {
            if j != last && t.leq(last, j) && !c.contains(&j) {
                let mut d = c.clone();
                d.push(j);
                stack.push(d);
            }
        }
        out.push(c);
    }
    out
}

fn least_upper_bound(t: &super::FiniteCuTable, set: &[usize]) -> Option<usize> {
    let ubs: Vec<usize> = (0..t.len()).filter(|&u| set.iter().all(|&c| t.leq(c, u))).collect();
    ubs.iter().copied().find(|&u| ubs.iter().all(|&v| t.leq(u, v)))
}

fn idx_witness(names: &[&str], values: &[usize]) -> Witness {
    names.iter().zip(values).fold(Witness::new(), |w, (n, &v)| w.with(*n, Elem::Idx(v)))
}

fn finite_structural(carrier: &Carrier) -> StructuralReport {
    let t = carrier.table().expect("table");
    let n = t.len();
    let chains = strict_chains(carrier);

    // O1: each chain has a least upper bound
    let mut o1 = Verdict::Holds;
    let mut lubs = Vec::with_capacity(chains.len());
    for c in &chains {
        match least_upper_bound(t, c) {
            Some(u) => lubs.push(u),
            None => {
                let w = c.iter().enumerate().fold(Witness::new(), |w, (i, &e)| w.with(format!("x{i}"), Elem::Idx(e)));
                o1 = Verdict::fails(w);
                lubs.push(usize::MAX);
            }
        }
    }

    // definitional way-below from the chains; a chain eventually dominates x
    // when x is below its terms from some index on
    let dominated_from = |c: &[usize], x: usize| (0..c.len()).any(|i| c[i..].iter().all(|&e| t.leq(x, e)));
    let mut wb = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            wb[x * n + y] = chains
                .iter()
                .zip(&lubs)
                .filter(|(_, &u)| u != usize::MAX && t.leq(y, u))
                .all(|(c, _)| dominated_from(c, x));
        }
    }
    let wbd = |x: usize, y: usize| wb[x * n + y];

    let mut eq = Verdict::Holds;
    'eq: for x in 0..n {
        for y in 0..n {
            if wbd(x, y) != t.leq(x, y) {
                eq = Verdict::fails(idx_witness(&["x", "y"], &[x, y]));
                break 'eq;
            }
        }
    }

    // O2: the only ≪-increasing sequences are eventually constant at a
    // compact element, so every element must be compact
    let o2 = match (0..n).find(|&x| !wbd(x, x)) {
        Some(x) => Verdict::fails(idx_witness(&["x"], &[x])),
        None => Verdict::Holds,
    };

    let mut o3 = Verdict::Holds;
    'o3: for xp in 0..n {
        for x in (0..n).filter(|&x| wbd(xp, x)) {
            for yp in 0..n {
                for y in (0..n).filter(|&y| wbd(yp, y)) {
                    if !wbd(t.add(xp, yp), t.add(x, y)) {
                        o3 = Verdict::fails(idx_witness(&["x'", "x", "y'", "y"], &[xp, x, yp, y]));
                        break 'o3;
                    }
                }
            }
        }
    }

    // O4: supremum of termwise sums of two chains, padded to equal length
    let mut o4 = Verdict::Holds;
    'o4: for (a, ua) in chains.iter().zip(&lubs) {
        for (b, ub) in chains.iter().zip(&lubs) {
            if *ua == usize::MAX || *ub == usize::MAX {
                continue;
            }
            let len = a.len().max(b.len());
            let at = |c: &[usize], i: usize| c[i.min(c.len() - 1)];
            let sums: Vec<usize> = (0..len).map(|i| t.add(at(a, i), at(b, i))).collect();
            if least_upper_bound(t, &sums) != Some(t.add(*ua, *ub)) {
                o4 = Verdict::fails(idx_witness(&["sup_a", "sup_b"], &[*ua, *ub]));
                break 'o4;
            }
        }
    }

    StructuralReport { o1, o2, o3, o4, waybelow_is_order: Some(eq) }
}

fn sampled_structural(carrier: &Carrier, fuel: u64) -> StructuralReport {
    let o1 = search_levels(false, fuel, |level, budget| {
        for x in carrier.fragment(level) {
            if !budget.spend(1) {
                return Level::OutOfFuel;
            }
            let chain = carrier.approximating_chain(&x);
            let sup = match carrier.sup_chain(&chain) {
                Ok(s) => s,
                Err(_) => return Level::Failed(Witness::new().with("x", x)),
            };
            let bounded = (0..=level + 1).all(|k| carrier.leq(&chain.term(carrier, k), &sup));
            if sup != x || !bounded {
                return Level::Failed(Witness::new().with("x", x).with("sup", sup));
            }
        }
        Level::Done
    });

    let o2 = search_levels(false, fuel, |level, budget| {
        for x in carrier.fragment(level) {
            if !budget.spend(1) {
                return Level::OutOfFuel;
            }
            let chain = carrier.approximating_chain(&x);
            for k in 0..=level + 1 {
                let (a, b) = (chain.term(carrier, k), chain.term(carrier, k + 1));
                if !carrier.waybelow(&a, &b) {
                    return Level::Failed(Witness::new().with("x", x).with("term", a).with("next", b));
                }
            }
        }
        Level::Done
    });

    let o3 = search_levels(false, fuel, |level, budget| {
        let frag = carrier.fragment(level);
        let pairs: Vec<(&Elem, &Elem)> = frag
            .iter()
            .flat_map(|a| frag.iter().map(move |b| (a, b)))
            .filter(|(a, b)| carrier.waybelow(a, b))
            .collect();
        for (xp, x) in &pairs {
            for (yp, y) in &pairs {
                if !budget.spend(1) {
                    return Level::OutOfFuel;
                }
                if !carrier.waybelow(&carrier.add(xp, yp), &carrier.add(x, y)) {
                    let w = Witness::new()
                        .with("x'", (*xp).clone())
                        .with("x", (*x).clone())
                        .with("y'", (*yp).clone())
                        .with("y", (*y).clone());
                    return Level::Failed(w);
                }
            }
        }
        Level::Done
    });

    let o4 = search_levels(false, fuel, |level, budget| {
        let frag = carrier.fragment(level);
        let basis = carrier.basis_fragment(level);
        for x in &frag {
            for y in &frag {
                if !budget.spend(1) {
                    return Level::OutOfFuel;
                }
                let (cx, cy) = (carrier.approximating_chain(x), carrier.approximating_chain(y));
                let total = carrier.add(x, y);
                let terms: Vec<Elem> =
                    (0..=level + 1).map(|k| carrier.add(&cx.term(carrier, k), &cy.term(carrier, k))).collect();
                let below = terms.iter().all(|s| carrier.leq(s, &total));
                let reaches = basis
                    .iter()
                    .filter(|b| carrier.waybelow(b, &total))
                    .all(|b| terms.iter().any(|s| carrier.leq(b, s)));
                if !below || !reaches {
                    return Level::Failed(Witness::new().with("x", x.clone()).with("y", y.clone()));
                }
            }
        }
        Level::Done
    });

    StructuralReport { o1, o2, o3, o4, waybelow_is_order: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{FiniteCuTable, MonotoneMaps, PosetDescr, WaybelowMode};
    use std::sync::Arc;

    #[test]
    fn nbar_rule_agrees_with_chains() {
        let r = validate_waybelow(&Carrier::Nbar, 1000).unwrap();
        assert!(r.agreement);
        assert!(r.level >= 2);
        assert!(!definitional_waybelow(&Carrier::Nbar, &Elem::INF, &Elem::INF, 3));
        assert!(definitional_waybelow(&Carrier::Nbar, &Elem::nat(3), &Elem::nat(5), 5));
    }

    #[test]
    fn zero_fuel_is_an_error() {
        assert_eq!(validate_waybelow(&Carrier::Nbar, 0), Err(Error::FuelExhausted(0)));
    }

    #[test]
    fn monotone_pairs() {
        let c = Carrier::Mono(Arc::new(MonotoneMaps::new(PosetDescr::chain(2), WaybelowMode::ClosedForm)));
        let t = |a: Elem, b: Elem| Elem::Tuple(vec![a, b]);
        let g = t(Elem::nat(1), Elem::INF);
        assert!(definitional_waybelow(&c, &t(Elem::nat(1), Elem::nat(1)), &g, 2));
        assert!(!definitional_waybelow(&c, &t(Elem::nat(0), Elem::INF), &g, 2));
    }

    #[test]
    fn chain_table_is_certified() {
        let r = check_o1_to_o4(&Carrier::chain(3), 0);
        assert!(r.certified(), "{r:?}");
    }

    #[test]
    fn order_incompatible_table_fails_o3() {
        // ℤ/2 with an absorbing top, ordered as a chain: 0 ≤ 1 but 0+1 ≰ 1+1
        let t = FiniteCuTable::new(
            vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]],
            vec![vec![true, true, true], vec![false, true, true], vec![false, false, true]],
        )
        .unwrap();
        assert!(!t.validate_pom().is_valid());
        let r = check_o1_to_o4(&Carrier::finite_unchecked(t), 0);
        assert!(r.o3.is_fail(), "{r:?}");
    }

    #[test]
    fn nbar_sampled_has_no_violation() {
        let r = check_o1_to_o4(&Carrier::Nbar, 1000);
        assert!(!r.any_failure(), "{r:?}");
        assert!(r.o3.is_unknown());
    }
}
