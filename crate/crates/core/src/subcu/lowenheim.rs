//! Growing a seed into a countably based sub-Cu-semigroup, optionally one
//! whose dimension stays bounded, and the finite-carrier check that `dim ≤ n`
//! is detected by small sub-Cu-semigroups.

use std::sync::Arc;

use serde::Serialize;

use super::{derived, generated_submonoid, is_sub_cu, seq_closure, SubCuVerdict, SubMonoidRepr, SubSet};
use crate::carrier::{Carrier, ChainDescr, Elem, ExtNat, NbarSet};
use crate::dimension::{check_dim_at_most, find_witness, DimBounds, DimCheck, DimOutcome};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenResult {
    pub sub: SubMonoidRepr,
    /// The compact members, which form a basis of `sub`.
    pub basis: SubMonoidRepr,
    pub rounds: u64,
    pub verdict: SubCuVerdict,
}

/// Closes `seed` under three rules until nothing changes: adjoin the
/// carrier's approximating chain of every member, take the generated
/// submonoid, add suprema of increasing sequences.
///
/// Supported on tables (where the chains are constant and only the additive
/// closure does anything) and on N̄ (where the chain of ∞ is `0,1,2,…`).
pub fn gen_countably_based_sub(c: &Carrier, seed: &[Elem], fuel: u64) -> Result<GenResult> {
    if !matches!(c, Carrier::Finite(_) | Carrier::Limit(_) | Carrier::Nbar) {
        return Err(Error::Unsupported("countably based closure".into(), c.describe()));
    }
    let mut cur = SubMonoidRepr::from_elements(c, seed)?;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut next = with_chain_terms(c, &cur);
        next = generated_submonoid(c, &next, fuel)?;
        if !next.stabilized {
            break;
        }
        next = seq_closure(c, &next)?;
        if next.same_set(&cur) || rounds >= fuel.max(1) {
            cur = next;
            break;
        }
        cur = next;
    }
    cur.generators = seed.to_vec();
    let basis = compact_part(c, &cur)?;
    let verdict = is_sub_cu(c, &cur)?;
    Ok(GenResult { sub: cur, basis, rounds, verdict })
}

fn with_chain_terms(c: &Carrier, t: &SubMonoidRepr) -> SubMonoidRepr {
    match &t.set {
        SubSet::Nbar(s) if s.has_inf() && !s.finite_part_unbounded() => {
            match c.approximating_chain(&Elem::INF) {
                ChainDescr::Arithmetic { start: 0, step: 1 } => SubMonoidRepr { set: SubSet::Nbar(s.union(&NbarSet::naturals())), ..t.clone() },
                other => unreachable!("N̄ approximates ∞ by {other:?}"),
            }
        }
        _ => t.clone(),
    }
}

fn compact_part(c: &Carrier, t: &SubMonoidRepr) -> Result<SubMonoidRepr> {
    Ok(match &t.set {
        SubSet::Nbar(s) => SubMonoidRepr { set: SubSet::Nbar(s.finite_part()), ..t.clone() },
        _ => derived(c, t)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenDimResult {
    pub sub: SubMonoidRepr,
    pub n: usize,
    /// The dimension check of the final sub-Cu-semigroup.
    pub check: DimCheck,
    /// Witness elements adjoined over all rounds.
    pub adjoined: Vec<Elem>,
    pub rounds: u64,
    pub verdict: SubCuVerdict,
}

/// Grows `seed` into a sub-Cu-semigroup `T` with `dim(T) ≤ n`.
///
/// Each round checks the dimension of the current `T`. A counterexample in
/// `T` is repaired by a witness found in the ambient carrier; its entries are
/// adjoined and `T` is closed again. The ambient carrier must satisfy
/// `dim ≤ n` under `bounds`, otherwise there may be nothing to adjoin.
pub fn gen_sub_with_dim(c: &Carrier, seed: &[Elem], n: usize, bounds: DimBounds, fuel: u64) -> Result<GenDimResult> {
    let ambient = check_dim_at_most(c, n, bounds, false)?;
    if ambient.is_no() {
        return Err(Error::InvalidParams(format!("{} does not satisfy dim <= {n}", c.describe())));
    }
    let mut gens: Vec<Elem> = seed.to_vec();
    let mut adjoined = Vec::new();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let g = gen_countably_based_sub(c, &gens, fuel)?;
        let (sub_carrier, back) = as_carrier(c, &g.sub)?;
        let check = check_dim_at_most(&sub_carrier, n, bounds, false)?;
        let ce = match &check.outcome {
            DimOutcome::No { counterexample } => counterexample.clone(),
            _ => {
                return Ok(GenDimResult { sub: g.sub, n, check, adjoined, rounds, verdict: g.verdict });
            }
        };
        if rounds >= fuel.max(1) {
            return Err(Error::FuelExhausted(fuel));
        }
        let (xp, x, ys) = (back(&ce.x_prime), back(&ce.x), ce.ys.iter().map(&back).collect::<Vec<_>>());
        let space = witness_space(c, &x);
        let w = find_witness(c, &xp, &x, &ys, n, &space)
            .ok_or_else(|| Error::LawViolation(format!("no dimension witness for x'={xp}, x={x} in the carrier")))?;
        let fresh: Vec<Elem> = w.z.into_iter().flatten().filter(|z| !g.sub.contains(z)).collect();
        if fresh.is_empty() {
            return Err(Error::LawViolation("witness already lies in the sub-Cu-semigroup".into()));
        }
        for z in fresh {
            if !gens.contains(&z) {
                adjoined.push(z.clone());
                gens.push(z);
            }
        }
    }
}

/// The sub-Cu-semigroup as a carrier in its own right, with a map from its
/// elements back to the ambient ones.
fn as_carrier(c: &Carrier, t: &SubMonoidRepr) -> Result<(Carrier, Box<dyn Fn(&Elem) -> Elem>)> {
    match &t.set {
        SubSet::Table(mask) => {
            let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
            let (table, idx) = c.table().expect("table").restrict(&members)?;
            Ok((Carrier::finite_unchecked(table), Box::new(move |e: &Elem| Elem::Idx(idx[e.idx().expect("index")]))))
        }
        SubSet::Nbar(s) => Ok((Carrier::NbarSub(Arc::new(s.clone())), Box::new(|e: &Elem| e.clone()))),
        SubSet::Listed(_) => Err(Error::Unsupported("dimension of a listed subset".into(), c.describe())),
    }
}

/// Candidates for witness entries. In N̄ every entry of a witness for `x`
/// lies below the finite element `x`.
fn witness_space(c: &Carrier, x: &Elem) -> Vec<Elem> {
    match c.elements() {
        Some(all) => all,
        None => match x.ext() {
            Some(ExtNat::Fin(v)) => c.basis_fragment(v),
            _ => c.basis_fragment(0),
        },
    }
}

/// Whether `dim(S) ≤ n` matches the existence of small sub-Cu-semigroups
/// of dimension at most `n` containing prescribed subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharDimReport {
    pub n: usize,
    /// `"finite-subsets"` or `"singletons"`.
    pub scope: &'static str,
    pub dim_at_most: bool,
    pub every_subset_extends: bool,
    pub agree: bool,
    /// A subset (as element indices) with no extension, if any.
    pub obstruction: Option<Vec<usize>>,
    pub sub_cu_count: usize,
}

/// Compares `dim(S) ≤ n` with: every subset of `S` lies in a
/// sub-Cu-semigroup of dimension at most `n`. Tables with at most 6
/// elements.
pub fn char_dim_finite(c: &Carrier, n: usize) -> Result<CharDimReport> {
    let t = c.table().ok_or_else(|| Error::Unsupported("finite characterization".into(), c.describe()))?;
    let subsets: Vec<u32> = (0u32..(1 << t.len())).collect();
    char_dim_over(c, n, "finite-subsets", &subsets)
}

/// The same comparison with one-element subsets only. This weaker
/// condition does not imply `dim ≤ n`; the report exposes the mismatch.
pub fn singleton_char_dim_finite(c: &Carrier, n: usize) -> Result<CharDimReport> {
    let t = c.table().ok_or_else(|| Error::Unsupported("finite characterization".into(), c.describe()))?;
    let subsets: Vec<u32> = (0..t.len()).map(|i| 1u32 << i).collect();
    char_dim_over(c, n, "singletons", &subsets)
}

fn char_dim_over(c: &Carrier, n: usize, scope: &'static str, subsets: &[u32]) -> Result<CharDimReport> {
    let bounds = DimBounds::default();
    let dim_at_most = check_dim_at_most(c, n, bounds, false)?.is_yes();
    let mut good: Vec<u32> = Vec::new();
    let subs = super::enumerate_sub_cu(c)?;
    for s in &subs {
        let (sc, _) = as_carrier(c, s)?;
        if check_dim_at_most(&sc, n, bounds, false)?.is_yes() {
            let mask = s.mask().expect("table subset");
            good.push((0..mask.len()).filter(|&i| mask[i]).map(|i| 1u32 << i).sum());
        }
    }
    let obstruction = subsets.iter().find(|&&f| !good.iter().any(|&g| g & f == f));
    let every_subset_extends = obstruction.is_none();
    Ok(CharDimReport {
        n,
        scope,
        dim_at_most,
        every_subset_extends,
        agree: dim_at_most == every_subset_extends,
        obstruction: obstruction.map(|&f| (0..32).filter(|i| f & (1 << i) != 0).collect()),
        sub_cu_count: subs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::FiniteCuTable;

    #[test]
    fn infinity_generates_everything() {
        let g = gen_countably_based_sub(&Carrier::Nbar, &[Elem::INF], 100).unwrap();
        assert_eq!(g.sub.nbar_set(), Some(&NbarSet::everything()));
        assert!(g.verdict.is_sub_cu);
        assert_eq!(g.basis.nbar_set(), Some(&NbarSet::naturals()));
        let z = gen_countably_based_sub(&Carrier::Nbar, &[Elem::nat(0)], 100).unwrap();
        assert_eq!(z.sub.nbar_set(), Some(&NbarSet::zero()));
    }

    #[test]
    fn finite_seed_gets_sup_closed() {
        let g = gen_countably_based_sub(&Carrier::Nbar, &[Elem::nat(4), Elem::nat(6)], 100).unwrap();
        assert!(g.verdict.is_sub_cu);
        assert!(g.sub.contains(&Elem::INF) && g.sub.contains(&Elem::nat(10)) && !g.sub.contains(&Elem::nat(2)));
    }

    #[test]
    fn bounded_dimension_in_nbar() {
        let r = gen_sub_with_dim(&Carrier::Nbar, &[Elem::INF], 0, DimBounds { width: 3, fuel: 300 }, 20).unwrap();
        assert_eq!(r.sub.nbar_set(), Some(&NbarSet::everything()));
        assert!(!r.check.is_no());
    }

    #[test]
    fn bounded_dimension_in_a_table() {
        let c = Carrier::chain(3);
        for i in 0..4 {
            let r = gen_sub_with_dim(&c, &[Elem::Idx(i)], 0, DimBounds::default(), 20).unwrap();
            assert!(r.check.is_yes() && r.sub.contains(&Elem::Idx(i)));
        }
    }

    #[test]
    fn m3_separates_the_two_scopes() {
        // join semilattice 0 < a,b,c < t with pairwise joins t
        let join = |x: usize, y: usize| match (x, y) {
            (0, y) => y,
            (x, 0) => x,
            (x, y) if x == y => x,
            _ => 4,
        };
        let t = FiniteCuTable::from_fns(5, join, |x, y| join(x, y) == y).unwrap();
        let c = Carrier::finite(t).unwrap();
        let full = char_dim_finite(&c, 0).unwrap();
        assert!(full.agree && !full.dim_at_most);
        let single = singleton_char_dim_finite(&c, 0).unwrap();
        assert!(single.every_subset_extends && !single.agree);
    }
}
