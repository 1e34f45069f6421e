//! Submonoids and their closures: generated submonoid, sequential and sup
//! closure, derived set, the kernel `δ`, the sub-Cu test and the lattice of
//! sub-Cu-semigroups.
//!
//! Tables carry exact subsets. In N̄ subsets are eventually periodic sets
//! ([`NbarSet`]), which are closed under every operation here, so results
//! are exact as well. Other catalog carriers only support additive
//! saturation of explicit element lists.

mod lowenheim;

pub use lowenheim::{
    char_dim_finite, gen_countably_based_sub, gen_sub_with_dim, singleton_char_dim_finite, CharDimReport,
    GenDimResult, GenResult,
};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::carrier::{nbar_generated_submonoid, Carrier, Elem, ExtNat, NbarSet};
use crate::error::{Error, Result};

/// The element set of a submonoid representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubSet {
    /// Membership mask over the elements of a table.
    Table(Vec<bool>),
    Nbar(NbarSet),
    /// Explicit elements of some other catalog carrier, sorted.
    Listed(Vec<Elem>),
}

/// A subset of a carrier, usually a submonoid, with its closure state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubMonoidRepr {
    pub set: SubSet,
    /// Elements the set was generated from, when known.
    pub generators: Vec<Elem>,
    /// False when a saturation ran out of fuel; the set is then only a
    /// partial result.
    pub stabilized: bool,
}

impl SubMonoidRepr {
    /// An explicit subset. Tables and N̄ get their exact representations.
    pub fn from_elements(c: &Carrier, elems: &[Elem]) -> Result<Self> {
        for e in elems {
            c.ensure(e)?;
        }
        let set = match c {
            Carrier::Finite(t) | Carrier::Limit(t) => {
                let mut mask = vec![false; t.len()];
                for e in elems {
                    mask[e.idx().expect("table element")] = true;
                }
                SubSet::Table(mask)
            }
            Carrier::Nbar => SubSet::Nbar(NbarSet::from_elements(elems.iter().map(|e| e.ext().expect("scalar")))),
            _ => {
                let mut v = elems.to_vec();
                v.sort();
                v.dedup();
                SubSet::Listed(v)
            }
        };
        Ok(SubMonoidRepr { set, generators: elems.to_vec(), stabilized: true })
    }

    pub fn nbar(set: NbarSet) -> Self {
        SubMonoidRepr { set: SubSet::Nbar(set), generators: vec![], stabilized: true }
    }

    pub fn table(mask: Vec<bool>) -> Self {
        SubMonoidRepr { set: SubSet::Table(mask), generators: vec![], stabilized: true }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (&self.set, e) {
            (SubSet::Table(m), Elem::Idx(i)) => m.get(*i).copied().unwrap_or(false),
            (SubSet::Nbar(s), Elem::Ext(x)) => s.contains(*x),
            (SubSet::Listed(v), _) => v.binary_search(e).is_ok(),
            _ => false,
        }
    }

    /// Members, with N̄ sets listed up to `bound` (∞ last).
    pub fn members(&self, bound: u64) -> Vec<Elem> {
        match &self.set {
            SubSet::Table(m) => (0..m.len()).filter(|&i| m[i]).map(Elem::Idx).collect(),
            SubSet::Nbar(s) => s.members_upto(bound).into_iter().map(Elem::Ext).collect(),
            SubSet::Listed(v) => v.clone(),
        }
    }

    pub fn mask(&self) -> Option<&[bool]> {
        match &self.set {
            SubSet::Table(m) => Some(m),
            _ => None,
        }
    }

    pub fn nbar_set(&self) -> Option<&NbarSet> {
        match &self.set {
            SubSet::Nbar(s) => Some(s),
            _ => None,
        }
    }

    /// Same elements, ignoring generators and closure state.
    pub fn same_set(&self, other: &SubMonoidRepr) -> bool {
        self.set == other.set
    }

    pub fn is_subset(&self, other: &SubMonoidRepr) -> bool {
        match (&self.set, &other.set) {
            (SubSet::Table(a), SubSet::Table(b)) => a.iter().zip(b).all(|(&x, &y)| !x || y),
            (SubSet::Nbar(a), SubSet::Nbar(b)) => a.is_subset(b),
            (SubSet::Listed(a), _) => a.iter().all(|e| other.contains(e)),
            _ => false,
        }
    }

    fn with_set(&self, set: SubSet) -> SubMonoidRepr {
        SubMonoidRepr { set, generators: self.generators.clone(), stabilized: self.stabilized }
    }
}

impl fmt::Display for SubMonoidRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.set {
            SubSet::Nbar(s) => write!(f, "{s}"),
            _ => {
                let items: Vec<String> = self.members(0).iter().map(Elem::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
        }
    }
}

impl Serialize for SubMonoidRepr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            elements: String,
            generators: &'a [Elem],
            stabilized: bool,
        }
        Out { elements: self.to_string(), generators: &self.generators, stabilized: self.stabilized }.serialize(s)
    }
}

fn unsupported(op: &str, c: &Carrier) -> Error {
    Error::Unsupported(op.into(), c.describe())
}

fn check_owner(c: &Carrier, t: &SubMonoidRepr) -> Result<()> {
    let ok = match (&t.set, c) {
        (SubSet::Table(m), Carrier::Finite(tb) | Carrier::Limit(tb)) => m.len() == tb.len(),
        (SubSet::Nbar(_), Carrier::Nbar) => true,
        (SubSet::Listed(v), _) => v.iter().all(|e| c.contains(e)),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NotInCarrier(format!("subset {t} of {}", c.describe())))
    }
}

/// The additive closure of `seed ∪ {0}`. On catalog carriers other than N̄
/// at most `fuel` elements are produced, and the result is marked
/// unstabilized if that cap is hit.
pub fn generated_submonoid(c: &Carrier, seed: &SubMonoidRepr, fuel: u64) -> Result<SubMonoidRepr> {
    check_owner(c, seed)?;
    Ok(match &seed.set {
        SubSet::Table(m) => {
            let t = c.table().expect("table");
            let mut mask = m.clone();
            mask[0] = true;
            let mut changed = true;
            while changed {
                changed = false;
                for a in 0..mask.len() {
                    for b in a..mask.len() {
                        if mask[a] && mask[b] && !mask[t.add(a, b)] {
                            mask[t.add(a, b)] = true;
                            changed = true;
                        }
                    }
                }
            }
            seed.with_set(SubSet::Table(mask))
        }
        SubSet::Nbar(s) => match nbar_generated_submonoid(s, fuel.max(1)) {
            Some(g) => seed.with_set(SubSet::Nbar(g)),
            None => SubMonoidRepr { stabilized: false, ..seed.clone() },
        },
        SubSet::Listed(v) => {
            let mut all: Vec<Elem> = v.clone();
            all.push(c.zero());
            all.sort();
            all.dedup();
            let mut stabilized = true;
            loop {
                let mut new = Vec::new();
                for a in &all {
                    for b in &all {
                        let s = c.add(a, b);
                        if all.binary_search(&s).is_err() && !new.contains(&s) {
                            new.push(s);
                        }
                    }
                }
                if new.is_empty() {
                    break;
                }
                if (all.len() + new.len()) as u64 > fuel {
                    stabilized = false;
                    break;
                }
                all.extend(new);
                all.sort();
            }
            SubMonoidRepr { set: SubSet::Listed(all), generators: seed.generators.clone(), stabilized }
        }
    })
}

/// True if the set contains 0 and is closed under addition.
pub fn is_submonoid(c: &Carrier, t: &SubMonoidRepr) -> Result<bool> {
    check_owner(c, t)?;
    Ok(match &t.set {
        SubSet::Table(m) => c.table().expect("table").is_submonoid(m),
        SubSet::Nbar(_) => {
            let g = generated_submonoid(c, t, 1 << 16)?;
            g.stabilized && g.same_set(t)
        }
        SubSet::Listed(v) => {
            v.contains(&c.zero()) && v.iter().all(|a| v.iter().all(|b| v.binary_search(&c.add(a, b)).is_ok()))
        }
    })
}

/// Adds the suprema of increasing sequences in `T`, once.
pub fn seq_closure(c: &Carrier, t: &SubMonoidRepr) -> Result<SubMonoidRepr> {
    check_owner(c, t)?;
    match &t.set {
        // increasing sequences in a finite set are eventually constant
        SubSet::Table(_) => Ok(t.clone()),
        SubSet::Nbar(s) => {
            let unbounded = s.finite_part_unbounded();
            Ok(t.with_set(SubSet::Nbar(s.clone().with_inf(s.has_inf() || unbounded))))
        }
        SubSet::Listed(_) => Err(unsupported("sequential closure", c)),
    }
}

/// Iterates [`seq_closure`] to a fixpoint, at most `fuel` times.
pub fn sup_closure(c: &Carrier, t: &SubMonoidRepr, fuel: u64) -> Result<SubMonoidRepr> {
    let mut cur = t.clone();
    for _ in 0..fuel.max(1) {
        let next = seq_closure(c, &cur)?;
        if next.same_set(&cur) {
            return Ok(next);
        }
        cur = next;
    }
    Ok(SubMonoidRepr { stabilized: false, ..cur })
}

/// Suprema of `≪`-increasing sequences in `T`.
///
/// In a table such a sequence is eventually constant at a compact element,
/// so `T'` is the set of compact members. In N̄ the terms are finite, so
/// `T'` is the finite part plus ∞ when the finite part is unbounded.
pub fn derived(c: &Carrier, t: &SubMonoidRepr) -> Result<SubMonoidRepr> {
    check_owner(c, t)?;
    match &t.set {
        SubSet::Table(m) => {
            let mask = (0..m.len()).map(|i| m[i] && c.waybelow(&Elem::Idx(i), &Elem::Idx(i))).collect();
            Ok(t.with_set(SubSet::Table(mask)))
        }
        SubSet::Nbar(s) => {
            let fin = s.finite_part();
            let unbounded = fin.finite_part_unbounded();
            Ok(t.with_set(SubSet::Nbar(fin.with_inf(unbounded))))
        }
        SubSet::Listed(_) => Err(unsupported("derived set", c)),
    }
}

/// `δ(T)`: the derived sets `T', T'', …` decrease from the first step on;
/// the first repetition is the fixpoint. After `fuel` steps without one
/// the last set is returned marked unstabilized.
pub fn delta(c: &Carrier, t: &SubMonoidRepr, fuel: u64) -> Result<DeltaResult> {
    let mut cur = derived(c, t)?;
    let mut iterations = 1;
    for _ in 0..fuel.max(1) {
        let next = derived(c, &cur)?;
        if next.same_set(&cur) {
            return Ok(DeltaResult { set: next, iterations, stabilized: true });
        }
        cur = next;
        iterations += 1;
    }
    Ok(DeltaResult { set: SubMonoidRepr { stabilized: false, ..cur }, iterations, stabilized: false })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaResult {
    pub set: SubMonoidRepr,
    /// Derived-set steps taken before the fixpoint was seen.
    pub iterations: u64,
    pub stabilized: bool,
}

/// Both characterizations of sub-Cu-semigroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCuVerdict {
    pub submonoid: bool,
    pub sup_closed: bool,
    /// For `x ∈ T` and any `x' ≪ x` in the carrier, some `y ∈ T` has `x' ≪ y ≪ x`.
    pub interpolation: bool,
    /// `T' = T`.
    pub derived_fixed: bool,
    pub is_sub_cu: bool,
    /// The two characterizations gave the same answer.
    pub agree: bool,
}

pub fn is_sub_cu(c: &Carrier, t: &SubMonoidRepr) -> Result<SubCuVerdict> {
    let submonoid = is_submonoid(c, t)?;
    let sup_closed = seq_closure(c, t)?.same_set(t);
    let interpolation = match &t.set {
        SubSet::Table(m) => {
            let n = m.len();
            let e = Elem::Idx;
            (0..n).filter(|&x| m[x]).all(|x| {
                (0..n).filter(|&xp| c.waybelow(&e(xp), &e(x))).all(|xp| {
                    (0..n).any(|y| m[y] && c.waybelow(&e(xp), &e(y)) && c.waybelow(&e(y), &e(x)))
                })
            })
        }
        // finite members interpolate themselves; ∞ needs members above every bound
        SubSet::Nbar(s) => !s.has_inf() || s.finite_part_unbounded(),
        SubSet::Listed(_) => return Err(unsupported("sub-Cu test", c)),
    };
    let derived_fixed = derived(c, t)?.same_set(t);
    let first = submonoid && sup_closed && interpolation;
    let second = submonoid && derived_fixed;
    Ok(SubCuVerdict { submonoid, sup_closed, interpolation, derived_fixed, is_sub_cu: first, agree: first == second })
}

fn union(c: &Carrier, ts: &[SubMonoidRepr]) -> Result<SubMonoidRepr> {
    let first = ts.first().ok_or_else(|| Error::InvalidParams("empty family".into()))?;
    let mut set = first.set.clone();
    for t in &ts[1..] {
        check_owner(c, t)?;
        set = match (set, &t.set) {
            (SubSet::Table(a), SubSet::Table(b)) => SubSet::Table(a.iter().zip(b).map(|(&x, &y)| x || y).collect()),
            (SubSet::Nbar(a), SubSet::Nbar(b)) => SubSet::Nbar(a.union(b)),
            (SubSet::Listed(mut a), SubSet::Listed(b)) => {
                a.extend(b.iter().cloned());
                a.sort();
                a.dedup();
                SubSet::Listed(a)
            }
            _ => return Err(Error::NotInCarrier("mixed subset representations".into())),
        };
    }
    Ok(SubMonoidRepr { set, generators: vec![], stabilized: ts.iter().all(|t| t.stabilized) })
}

fn intersection(c: &Carrier, ts: &[SubMonoidRepr]) -> Result<SubMonoidRepr> {
    let first = ts.first().ok_or_else(|| Error::InvalidParams("empty family".into()))?;
    let mut set = first.set.clone();
    for t in &ts[1..] {
        check_owner(c, t)?;
        set = match (set, &t.set) {
            (SubSet::Table(a), SubSet::Table(b)) => SubSet::Table(a.iter().zip(b).map(|(&x, &y)| x && y).collect()),
            (SubSet::Nbar(a), SubSet::Nbar(b)) => SubSet::Nbar(a.intersection(b)),
            (SubSet::Listed(a), SubSet::Listed(b)) => SubSet::Listed(a.into_iter().filter(|e| b.contains(e)).collect()),
            _ => return Err(Error::NotInCarrier("mixed subset representations".into())),
        };
    }
    Ok(SubMonoidRepr { set, generators: vec![], stabilized: ts.iter().all(|t| t.stabilized) })
}

/// Join in the lattice of sub-Cu-semigroups: the sup-closure of the
/// submonoid generated by the union.
pub fn lattice_sup(c: &Carrier, ts: &[SubMonoidRepr], fuel: u64) -> Result<SubMonoidRepr> {
    let u = union(c, ts)?;
    let g = generated_submonoid(c, &u, fuel)?;
    sup_closure(c, &g, fuel)
}

/// Meet in the lattice of sub-Cu-semigroups: `δ` of the intersection.
pub fn lattice_inf(c: &Carrier, ts: &[SubMonoidRepr], fuel: u64) -> Result<SubMonoidRepr> {
    let i = intersection(c, ts)?;
    Ok(delta(c, &i, fuel)?.set)
}

/// Every sub-Cu-semigroup of a table with at most 6 elements, ordered by
/// membership bitmask. Each candidate submonoid goes through
/// [`is_sub_cu`]; none is assumed.
pub fn enumerate_sub_cu(c: &Carrier) -> Result<Vec<SubMonoidRepr>> {
    let t = c.table().ok_or_else(|| unsupported("sub-Cu enumeration", c))?;
    let n = t.len();
    if n > 6 {
        return Err(Error::InvalidParams(format!("sub-Cu enumeration is capped at 6 elements, got {n}")));
    }
    let mut out = Vec::new();
    for mask in (0u32..(1 << n)).filter(|m| m & 1 == 1) {
        let sub = SubMonoidRepr::table((0..n).map(|i| mask & (1 << i) != 0).collect());
        let v = is_sub_cu(c, &sub)?;
        if !v.agree {
            return Err(Error::LawViolation(format!("sub-Cu characterizations disagree on {sub}")));
        }
        if v.is_sub_cu {
            out.push(sub);
        }
    }
    Ok(out)
}

/// Convenience for N̄ sets.
pub fn nbar_elems(items: &[ExtNat]) -> SubMonoidRepr {
    SubMonoidRepr::nbar(NbarSet::from_elements(items.iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nb(s: NbarSet) -> SubMonoidRepr {
        SubMonoidRepr::nbar(s)
    }

    #[test]
    fn numerical_monoid_and_closure() {
        let c = Carrier::Nbar;
        let g = generated_submonoid(&c, &nbar_elems(&[ExtNat::Fin(2), ExtNat::Fin(3)]), 1000).unwrap();
        let expected = NbarSet::at_least(2).union(&NbarSet::zero());
        assert_eq!(g.nbar_set(), Some(&expected));
        let s = sup_closure(&c, &g, 10).unwrap();
        assert_eq!(s.nbar_set(), Some(&expected.clone().with_inf(true)));
        assert_eq!(sup_closure(&c, &s, 10).unwrap(), s);
        let empty = generated_submonoid(&c, &nb(NbarSet::empty()), 10).unwrap();
        assert_eq!(empty.nbar_set(), Some(&NbarSet::zero()));
    }

    #[test]
    fn derived_sets_in_nbar() {
        let c = Carrier::Nbar;
        let d = derived(&c, &nb(NbarSet::naturals())).unwrap();
        assert_eq!(d.nbar_set(), Some(&NbarSet::everything()));
        let zi = nb(NbarSet::zero().with_inf(true));
        assert_eq!(derived(&c, &zi).unwrap().nbar_set(), Some(&NbarSet::zero()));
        let r = delta(&c, &zi, 10).unwrap();
        assert!(r.stabilized);
        assert_eq!(r.set.nbar_set(), Some(&NbarSet::zero()));
    }

    #[test]
    fn sub_cu_fixtures_in_nbar() {
        let c = Carrier::Nbar;
        let big = nb(NbarSet::at_least(5).union(&NbarSet::zero()).with_inf(true));
        let v = is_sub_cu(&c, &big).unwrap();
        assert!(v.is_sub_cu && v.agree);
        let v = is_sub_cu(&c, &nb(NbarSet::zero().with_inf(true))).unwrap();
        assert!(!v.is_sub_cu && !v.interpolation && v.agree);
        let v = is_sub_cu(&c, &nb(NbarSet::naturals())).unwrap();
        assert!(!v.is_sub_cu && !v.sup_closed && v.agree);
    }

    #[test]
    fn lattice_in_nbar() {
        let c = Carrier::Nbar;
        let two = nb(NbarSet::multiples(2).with_inf(true));
        let three = nb(NbarSet::multiples(3).with_inf(true));
        let inf = lattice_inf(&c, &[two.clone(), three.clone()], 10).unwrap();
        assert_eq!(inf.nbar_set(), Some(&NbarSet::multiples(6).with_inf(true)));
        let sup = lattice_sup(&c, &[two.clone(), three], 1000).unwrap();
        assert_eq!(sup.nbar_set(), Some(&NbarSet::at_least(2).union(&NbarSet::zero()).with_inf(true)));
        assert!(lattice_sup(&c, &[two.clone(), two.clone()], 1000).unwrap().same_set(&two));
        assert!(lattice_inf(&c, &[two.clone(), two.clone()], 10).unwrap().same_set(&two));
    }

    #[test]
    fn finite_sub_cu_are_submonoids() {
        let c = Carrier::chain(2);
        let subs: Vec<String> = enumerate_sub_cu(&c).unwrap().iter().map(|s| s.to_string()).collect();
        // {0,1} is not closed since 1+1 = 2
        assert_eq!(subs, vec!["{0}", "{0,2}", "{0,1,2}"]);
        assert_eq!(enumerate_sub_cu(&Carrier::trivial()).unwrap().len(), 1);
    }
}
