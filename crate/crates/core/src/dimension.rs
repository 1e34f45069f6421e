//! Covering dimension: deciding `dim ≤ n` with witnesses, computing the
//! dimension, ideals and quotients, and the permanence and soft-part bounds.
//!
//! An instance is `x' ≪ x ≪ y_1 + … + y_r`. A witness is a matrix
//! `z[j][k]` (`j < r`, `k ≤ n`) with `z[j][k] ≪ y_j`, `x' ≪ Σ z`, and
//! `Σ_j z[j][k] ≪ x` for each column `k`.
//!
//! The search works column by column: first the set of sums `Σ_j z[j][k]`
//! that a single column can reach while staying `≪ x`, then which totals of
//! `n+1` such column sums lie above `x'`. Partial sums that are not `≪ x`
//! are pruned, since any larger sum fails too.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::axioms::{self, Axiom, Mode, SoftHypotheses};
use crate::carrier::{direct_sum, Carrier, Elem, FiniteCuTable};
use crate::error::{Error, Result};
use crate::verdict::{search_levels, Budget, Level, Verdict, Witness};

/// Bounds shared by the dimension computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimBounds {
    /// Largest number of summands `r` on catalog carriers.
    pub width: usize,
    /// Instances examined on catalog carriers.
    pub fuel: u64,
}

impl Default for DimBounds {
    fn default() -> Self {
        DimBounds { width: 6, fuel: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimWitness {
    pub x_prime: Elem,
    pub x: Elem,
    pub ys: Vec<Elem>,
    /// `z[j][k]`, one row per summand.
    pub z: Vec<Vec<Elem>>,
}

impl DimWitness {
    /// Re-checks the three conditions and the instance premise.
    pub fn verify(&self, c: &Carrier) -> bool {
        let cols = self.z.first().map_or(0, Vec::len);
        c.waybelow(&self.x_prime, &self.x)
            && c.waybelow(&self.x, &c.sum(&self.ys))
            && self.z.len() == self.ys.len()
            && self.z.iter().zip(&self.ys).all(|(row, y)| row.len() == cols && row.iter().all(|z| c.waybelow(z, y)))
            && c.waybelow(&self.x_prime, &c.sum(self.z.iter().flatten()))
            && (0..cols).all(|k| c.waybelow(&c.sum(self.z.iter().map(|row| &row[k])), &self.x))
    }

    pub fn n(&self) -> usize {
        self.z.first().map_or(0, Vec::len).saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimCounterexample {
    pub x_prime: Elem,
    pub x: Elem,
    pub ys: Vec<Elem>,
}

impl DimCounterexample {
    pub fn as_witness(&self) -> Witness {
        let mut w = Witness::new().with("x'", self.x_prime.clone()).with("x", self.x.clone());
        for (j, y) in self.ys.iter().enumerate() {
            w = w.with(format!("y{}", j + 1), y.clone());
        }
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DimOutcome {
    /// Every instance has a witness (exact on tables).
    Yes,
    No { counterexample: DimCounterexample },
    /// No counterexample among the instances the fuel allowed.
    UpToBounds { fuel: u64, level: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimCheck {
    pub n: usize,
    #[serde(flatten)]
    pub outcome: DimOutcome,
    pub instances: u64,
    pub bounds: DimBounds,
    /// Witnesses in instance order, when they were requested.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<DimWitness>,
}

impl DimCheck {
    pub fn is_yes(&self) -> bool {
        matches!(self.outcome, DimOutcome::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self.outcome, DimOutcome::No { .. })
    }
}

/// Searches a witness for one instance with `n+1` columns, taking the
/// `z[j][k]` from `space`.
pub fn find_witness(c: &Carrier, x_prime: &Elem, x: &Elem, ys: &[Elem], n: usize, space: &[Elem]) -> Option<DimWitness> {
    // layers[j] maps each reachable partial column sum to (previous sum, z)
    let mut layers: Vec<BTreeMap<Elem, (Elem, Elem)>> = Vec::with_capacity(ys.len());
    let mut frontier: Vec<Elem> = vec![c.zero()];
    for y in ys {
        let cands: Vec<&Elem> = space.iter().filter(|z| c.waybelow(z, y)).collect();
        let mut next: BTreeMap<Elem, (Elem, Elem)> = BTreeMap::new();
        for r in &frontier {
            for z in &cands {
                let s = c.add(r, z);
                if c.waybelow(&s, x) {
                    next.entry(s).or_insert_with(|| (r.clone(), (*z).clone()));
                }
            }
        }
        frontier = next.keys().cloned().collect();
        layers.push(next);
    }
    let columns = frontier;
    if columns.is_empty() {
        return None;
    }
    // totals of k+1 column sums, with back pointers
    let mut totals: Vec<BTreeMap<Elem, (Elem, Elem)>> = Vec::with_capacity(n + 1);
    let mut reach: Vec<Elem> = vec![c.zero()];
    for _ in 0..=n {
        let mut next: BTreeMap<Elem, (Elem, Elem)> = BTreeMap::new();
        for t in &reach {
            for col in &columns {
                next.entry(c.add(t, col)).or_insert_with(|| (t.clone(), col.clone()));
            }
        }
        reach = next.keys().cloned().collect();
        totals.push(next);
    }
    let goal = reach.iter().find(|t| c.waybelow(x_prime, t))?.clone();

    let mut col_sums = vec![c.zero(); n + 1];
    let mut t = goal;
    for k in (0..=n).rev() {
        let (prev, col) = totals[k][&t].clone();
        col_sums[k] = col;
        t = prev;
    }
    let mut z = vec![vec![c.zero(); n + 1]; ys.len()];
    for (k, s) in col_sums.iter().enumerate() {
        let mut s = s.clone();
        for j in (0..ys.len()).rev() {
            let (prev, zz) = layers[j][&s].clone();
            z[j][k] = zz;
            s = prev;
        }
    }
    Some(DimWitness { x_prime: x_prime.clone(), x: x.clone(), ys: ys.to_vec(), z })
}

/// Multisets over `items` with `caps[i]` as the largest multiplicity of
/// `items[i]` and at most `max_len` entries, as sorted lists, shortest first
/// and lexicographic within a length.
fn multisets(items: &[Elem], caps: &[usize], max_len: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    fn go(items: &[Elem], caps: &[usize], i: usize, left: usize, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if i == items.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        let max = caps[i].min(left);
        for m in 0..=max {
            for _ in 0..m {
                cur.push(items[i].clone());
            }
            go(items, caps, i + 1, left - m, cur, out);
            cur.truncate(cur.len() - m);
        }
    }
    go(items, caps, 0, max_len, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Reachable column sums, total, and the (parent, summand) it came from.
type State = (Vec<bool>, usize, Option<(usize, usize)>);

/// Exact search on a table. There `≪` is `≤`, so for fixed `x` and `Y` the
/// instance with `x' = x` is the hardest one. A list of summands matters only
/// through its total and the set of column sums it reaches below `x`, and
/// both grow as summands are added, so a breadth-first search over these
/// pairs meets every instance up to equivalence. The first instance without
/// a witness is returned with a shortest summand list.
fn table_search(
    c: &Carrier,
    t: &FiniteCuTable,
    n: usize,
    keep: bool,
    witnesses: &mut Vec<DimWitness>,
    instances: &mut u64,
) -> Option<DimCounterexample> {
    let len = t.len();
    let space = c.elements().expect("finite");
    for x in 0..len {
        let mut states: Vec<State> = Vec::new();
        let mut seen: HashSet<(Vec<bool>, usize)> = HashSet::new();
        let mut start = vec![false; len];
        start[0] = true;
        seen.insert((start.clone(), 0));
        states.push((start, 0, None));
        let mut i = 0;
        while i < states.len() {
            let (cols, total) = (states[i].0.clone(), states[i].1);
            // the start state has no summands and is not an instance
            if i > 0 && t.leq(x, total) {
                *instances += 1;
                let summands = || {
                    let mut ys = Vec::new();
                    let mut at = i;
                    while let Some((parent, y)) = states[at].2 {
                        ys.push(Elem::Idx(y));
                        at = parent;
                    }
                    ys.reverse();
                    ys
                };
                if !covers(t, &cols, n, x) {
                    return Some(DimCounterexample { x_prime: Elem::Idx(x), x: Elem::Idx(x), ys: summands() });
                }
                if keep {
                    let ys = summands();
                    witnesses.push(find_witness(c, &Elem::Idx(x), &Elem::Idx(x), &ys, n, &space).expect("covered instance"));
                }
            }
            for y in 1..len {
                let mut next = vec![false; len];
                for r in (0..len).filter(|&r| cols[r]) {
                    for z in (0..len).filter(|&z| t.leq(z, y)) {
                        let s = t.add(r, z);
                        if t.leq(s, x) {
                            next[s] = true;
                        }
                    }
                }
                let key = (next, t.add(total, y));
                if seen.insert(key.clone()) {
                    states.push((key.0, key.1, Some((i, y))));
                }
            }
            i += 1;
        }
    }
    None
}

/// Whether some sum of `n+1` members of `cols` lies above `x`.
fn covers(t: &FiniteCuTable, cols: &[bool], n: usize, x: usize) -> bool {
    let len = t.len();
    let mut reach = vec![false; len];
    reach[0] = true;
    for _ in 0..=n {
        let mut next = vec![false; len];
        for a in (0..len).filter(|&a| reach[a]) {
            for b in (0..len).filter(|&b| cols[b]) {
                next[t.add(a, b)] = true;
            }
        }
        reach = next;
    }
    (0..len).any(|r| reach[r] && t.leq(x, r))
}

/// Decides `dim ≤ n`.
///
/// On tables the answer is exact (see `table_search`). On catalog carriers the
/// instances come from basis fragments of increasing level with at most
/// `width` summands, and witnesses are taken from the same fragment.
pub fn check_dim_at_most(c: &Carrier, n: usize, bounds: DimBounds, keep_witnesses: bool) -> Result<DimCheck> {
    if bounds.width == 0 {
        return Err(Error::ZeroBound("width".into()));
    }
    if bounds.fuel == 0 && c.table().is_none() {
        return Err(Error::ZeroBound("fuel".into()));
    }
    let mut witnesses = Vec::new();
    let mut instances = 0u64;
    if let Some(t) = c.table() {
        let outcome = match table_search(c, t, n, keep_witnesses, &mut witnesses, &mut instances) {
            Some(counterexample) => DimOutcome::No { counterexample },
            None => DimOutcome::Yes,
        };
        return Ok(DimCheck { n, outcome, instances, bounds, witnesses });
    }

    let mut failure = None;
    let verdict = search_levels(false, bounds.fuel, |level, budget: &Budget| {
        let basis = c.basis_fragment(level);
        let zero = c.zero();
        let items: Vec<Elem> = basis.iter().filter(|e| **e != zero).cloned().collect();
        let caps = vec![bounds.width; items.len()];
        for ys in multisets(&items, &caps, bounds.width) {
            let s = c.sum(&ys);
            for x in basis.iter().filter(|x| c.waybelow(x, &s)) {
                for xp in basis.iter().filter(|xp| c.waybelow(xp, x)) {
                    if !budget.spend(1) {
                        return Level::OutOfFuel;
                    }
                    instances += 1;
                    match find_witness(c, xp, x, &ys, n, &basis) {
                        Some(w) => {
                            if keep_witnesses {
                                witnesses.push(w);
                            }
                        }
                        None => {
                            let ce = DimCounterexample { x_prime: xp.clone(), x: x.clone(), ys: ys.clone() };
                            let w = ce.as_witness();
                            failure = Some(ce);
                            return Level::Failed(w);
                        }
                    }
                }
            }
        }
        Level::Done
    });
    let outcome = match (verdict, failure) {
        (_, Some(counterexample)) => DimOutcome::No { counterexample },
        (Verdict::Unknown { fuel, level }, None) => DimOutcome::UpToBounds { fuel, level },
        (_, None) => DimOutcome::Yes,
    };
    Ok(DimCheck { n, outcome, instances, bounds, witnesses })
}

/// The dimension as far as it can be certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DimValue {
    Exact { n: usize },
    /// `dim ≤ n` holds up to the bounds, and `dim ≤ n-1` was refuted.
    AtMostUpToBounds { n: usize },
    /// `dim ≤ max_n` was refuted.
    Above { max_n: usize },
}

impl DimValue {
    /// The certified (or bounded) value, if any.
    pub fn value(self) -> Option<usize> {
        match self {
            DimValue::Exact { n } | DimValue::AtMostUpToBounds { n } => Some(n),
            DimValue::Above { .. } => None,
        }
    }
}

pub fn dim(c: &Carrier, max_n: usize, bounds: DimBounds) -> Result<DimValue> {
    for n in 0..=max_n {
        let r = check_dim_at_most(c, n, bounds, false)?;
        match r.outcome {
            DimOutcome::Yes => return Ok(DimValue::Exact { n }),
            DimOutcome::UpToBounds { .. } => return Ok(DimValue::AtMostUpToBounds { n }),
            DimOutcome::No { .. } => {}
        }
    }
    Ok(DimValue::Above { max_n })
}

/// Default cutoff for [`dim`].
pub const DEFAULT_MAX_N: usize = 3;

/// A downward-closed submonoid of a table, as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdealRepr {
    pub members: Vec<usize>,
}

impl IdealRepr {
    pub fn check(t: &FiniteCuTable, members: &[usize]) -> Result<IdealRepr> {
        let mut mask = vec![false; t.len()];
        for &m in members {
            if m >= t.len() {
                return Err(Error::NotInCarrier(m.to_string()));
            }
            mask[m] = true;
        }
        if !t.is_submonoid(&mask) {
            return Err(Error::NotAnIdeal("not a submonoid".into()));
        }
        for a in (0..t.len()).filter(|&a| mask[a]) {
            if let Some(b) = (0..t.len()).find(|&b| !mask[b] && t.leq(b, a)) {
                return Err(Error::NotAnIdeal(format!("{b} ≤ {a} but {b} is missing")));
            }
        }
        Ok(IdealRepr { members: (0..t.len()).filter(|&a| mask[a]).collect() })
    }
}

fn table_of(c: &Carrier) -> Result<&FiniteCuTable> {
    c.table().ok_or_else(|| Error::Unsupported("ideal computations".into(), c.describe()))
}

/// All ideals of a table, ordered by membership bitmask. Suprema of
/// increasing sequences are eventual values here, so every submonoid is
/// sup-closed.
pub fn enumerate_ideals(c: &Carrier) -> Result<Vec<IdealRepr>> {
    let t = table_of(c)?;
    let n = t.len();
    if n > 20 {
        return Err(Error::InvalidParams(format!("ideal enumeration is capped at 20 elements, got {n}")));
    }
    Ok((0u32..(1 << n))
        .filter(|m| m & 1 == 1)
        .filter_map(|m| IdealRepr::check(t, &(0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>()).ok())
        .collect())
}

/// `S / I` with its class map.
#[derive(Clone, Debug)]
pub struct QuotientRepr {
    pub carrier: Carrier,
    /// Class index of each element of `S`; the class of 0 is 0.
    pub class_of: Vec<usize>,
}

/// The quotient order is `x ≤ y` iff `x ≤ y + z` for some `z ∈ I`; classes
/// are the mutually dominated elements, numbered by their least member.
pub fn quotient(c: &Carrier, ideal: &IdealRepr) -> Result<QuotientRepr> {
    let t = table_of(c)?;
    let ideal = IdealRepr::check(t, &ideal.members)?;
    let n = t.len();
    let pre = |x: usize, y: usize| ideal.members.iter().any(|&z| t.leq(x, t.add(y, z)));
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(x);
        for y in x..n {
            if pre(x, y) && pre(y, x) {
                class_of[y] = k;
            }
        }
    }
    let m = reps.len();
    let add: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| class_of[t.add(reps[i], reps[j])]).collect()).collect();
    let leq: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| pre(reps[i], reps[j])).collect()).collect();
    let table = FiniteCuTable::new(add, leq)?;
    Ok(QuotientRepr { carrier: Carrier::finite(table)?, class_of })
}

/// The induced table on an ideal.
pub fn ideal_carrier(c: &Carrier, ideal: &IdealRepr) -> Result<Carrier> {
    let (t, _) = table_of(c)?.restrict(&ideal.members)?;
    Carrier::finite(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealEntry {
    pub members: Vec<usize>,
    pub dim_ideal: DimValue,
    pub dim_quotient: DimValue,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermanenceReport {
    pub dim: DimValue,
    pub ideals: Vec<IdealEntry>,
    pub holds: bool,
}

fn le(a: DimValue, b: DimValue) -> bool {
    match (a.value(), b.value()) {
        (Some(a), Some(b)) => a <= b,
        (_, None) => true,
        (None, Some(_)) => false,
    }
}

/// `dim(I) ≤ dim(S)` and `dim(S/I) ≤ dim(S)` for every ideal of a table.
pub fn verify_permanence(c: &Carrier, max_n: usize) -> Result<PermanenceReport> {
    let bounds = DimBounds::default();
    let d = dim(c, max_n, bounds)?;
    let mut ideals = Vec::new();
    for i in enumerate_ideals(c)? {
        let di = dim(&ideal_carrier(c, &i)?, max_n, bounds)?;
        let dq = dim(&quotient(c, &i)?.carrier, max_n, bounds)?;
        ideals.push(IdealEntry { members: i.members, dim_ideal: di, dim_quotient: dq, holds: le(di, d) && le(dq, d) });
    }
    let holds = ideals.iter().all(|e| e.holds);
    Ok(PermanenceReport { dim: d, ideals, holds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumPermanence {
    pub dim_s: DimValue,
    pub dim_t: DimValue,
    pub dim_sum: DimValue,
    pub holds: bool,
}

/// `dim(S ⊕ T) = max(dim S, dim T)`.
pub fn verify_sum_permanence(s: &Carrier, t: &Carrier, max_n: usize, bounds: DimBounds) -> Result<SumPermanence> {
    let (ds, dt) = (dim(s, max_n, bounds)?, dim(t, max_n, bounds)?);
    let dsum = dim(&direct_sum(s, t), max_n, bounds)?;
    let expected = match (ds.value(), dt.value()) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    };
    Ok(SumPermanence { dim_s: ds, dim_t: dt, dim_sum: dsum, holds: dsum.value() == expected })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoftDimReport {
    pub hypotheses: SoftHypotheses,
    pub soft: Vec<Elem>,
    pub dim_soft: Option<DimValue>,
    pub dim: DimValue,
    /// `dim(S_soft) ≤ dim(S)`.
    pub lower: bool,
    /// `dim(S) ≤ dim(S_soft) + 1`.
    pub upper: bool,
}

/// Both dimensions and the two inequalities. The soft part is measured as a
/// table of its own when it is closed under addition.
pub fn soft_dim_bounds(c: &Carrier, max_n: usize, bounds: DimBounds) -> Result<SoftDimReport> {
    let part = axioms::soft_part(c, bounds.fuel)?;
    let d = dim(c, max_n, bounds)?;
    let dim_soft = match part.standalone(c) {
        Some(s) => Some(dim(&s, max_n, bounds)?),
        None => None,
    };
    let (lower, upper) = match (dim_soft.and_then(DimValue::value), d.value()) {
        (Some(a), Some(b)) => (a <= b, b <= a + 1),
        _ => (false, false),
    };
    Ok(SoftDimReport { hypotheses: part.hypotheses, soft: part.elements, dim_soft, dim: d, lower, upper })
}

/// Whether a table satisfies the hypotheses of the interpolation consequence:
/// simple, weakly cancellative, O5, and dimension zero.
pub fn interpolation_hypotheses(c: &Carrier) -> Result<bool> {
    for a in [Axiom::Simple, Axiom::WeakCancellation, Axiom::O5] {
        if !axioms::check_axiom(c, a, Mode::Direct, None, 1)?.verdict.holds() {
            return Ok(false);
        }
    }
    Ok(check_dim_at_most(c, 0, DimBounds::default(), false)?.is_yes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_chains_are_zero_dimensional() {
        assert_eq!(dim(&Carrier::trivial(), 3, DimBounds::default()).unwrap(), DimValue::Exact { n: 0 });
        assert_eq!(dim(&Carrier::chain(2), 3, DimBounds::default()).unwrap(), DimValue::Exact { n: 0 });
    }

    #[test]
    fn witnesses_replay() {
        let c = Carrier::chain(3);
        let r = check_dim_at_most(&c, 1, DimBounds::default(), true).unwrap();
        assert!(r.is_yes());
        assert_eq!(r.witnesses.len() as u64, r.instances);
        assert!(r.witnesses.iter().all(|w| w.verify(&c) && w.n() == 1));
    }

    #[test]
    fn nbar_up_to_fuel() {
        let r = check_dim_at_most(&Carrier::Nbar, 0, DimBounds { width: 3, fuel: 2000 }, true).unwrap();
        assert!(matches!(r.outcome, DimOutcome::UpToBounds { .. }), "{:?}", r.outcome);
        assert!(r.witnesses.iter().all(|w| w.verify(&Carrier::Nbar)));
    }

    #[test]
    fn zero_bounds_are_errors() {
        let b = DimBounds { width: 0, fuel: 1 };
        assert_eq!(check_dim_at_most(&Carrier::chain(1), 0, b, false).unwrap_err(), Error::ZeroBound("width".into()));
    }

    #[test]
    fn chain_ideals() {
        // in C_2 the down-set {0,1} is not closed since 1+1=2
        let ids: Vec<Vec<usize>> = enumerate_ideals(&Carrier::chain(2)).unwrap().into_iter().map(|i| i.members).collect();
        assert_eq!(ids, vec![vec![0], vec![0, 1, 2]]);
        assert_eq!(enumerate_ideals(&Carrier::trivial()).unwrap().len(), 1);
    }

    #[test]
    fn quotient_extremes() {
        let c = Carrier::chain(3);
        let q0 = quotient(&c, &IdealRepr { members: vec![0] }).unwrap();
        assert!(q0.carrier.table().unwrap().isomorphism_to(c.table().unwrap()).is_some());
        let qs = quotient(&c, &IdealRepr { members: vec![0, 1, 2, 3] }).unwrap();
        assert_eq!(qs.carrier.table().unwrap().len(), 1);
        assert!(matches!(quotient(&c, &IdealRepr { members: vec![0, 2] }), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn nbar_soft_bounds() {
        let r = soft_dim_bounds(&Carrier::Nbar, 2, DimBounds { width: 3, fuel: 2000 }).unwrap();
        assert_eq!(r.soft, vec![Elem::nat(0), Elem::INF]);
        assert_eq!(r.dim_soft, Some(DimValue::Exact { n: 0 }));
        assert!(r.lower && r.upper);
    }
}
