//! Carriers: finite tables and catalog instances behind one effective
//! Cu-semigroup contract (zero, addition, order, way-below, basis
//! enumeration, chain suprema).

mod catalog;
mod chain;
pub mod enumerate;
mod nbar;
pub mod oracle;
mod table;

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use catalog::{direct_sum, instantiate_catalog, CatalogId, MonotoneMaps, PosetDescr, WaybelowMode};
pub use chain::ChainDescr;
pub use nbar::{generated_submonoid as nbar_generated_submonoid, ExtNat, NbarSet};
pub use table::{FiniteCuTable, Law, LawViolation, ValidationReport};

/// An element of some carrier, in canonical encoding.
///
/// Finite tables use `Idx`; N̄ and its subsets use `Ext`; direct sums and
/// monotone maps use `Tuple`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Idx(usize),
    Ext(ExtNat),
    Tuple(Vec<Elem>),
}

impl Elem {
    pub const INF: Elem = Elem::Ext(ExtNat::Inf);

    pub fn nat(n: u64) -> Elem {
        Elem::Ext(ExtNat::Fin(n))
    }

    pub fn idx(&self) -> Option<usize> {
        match self {
            Elem::Idx(i) => Some(*i),
            _ => None,
        }
    }

    pub fn ext(&self) -> Option<ExtNat> {
        match self {
            Elem::Ext(e) => Some(*e),
            _ => None,
        }
    }

    pub fn tuple(&self) -> Option<&[Elem]> {
        match self {
            Elem::Tuple(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Idx(i) => write!(f, "{i}"),
            Elem::Ext(e) => write!(f, "{e}"),
            Elem::Tuple(v) => {
                f.write_str("(")?;
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Serialize for Elem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Finite,
    Catalog,
    Limit,
}

/// A Cu-semigroup that can be computed with.
///
/// Carriers are immutable and cheap to clone; all predicates are pure.
#[derive(Clone, Debug)]
pub enum Carrier {
    /// A validated finite table; way-below coincides with the order.
    Finite(Arc<FiniteCuTable>),
    /// The limit of a finite chain of tables, realized on its thread classes.
    Limit(Arc<FiniteCuTable>),
    /// `N̄ = {0, 1, ..., ∞}`.
    Nbar,
    /// A sub-Cu-semigroup of N̄ with the induced structure. Only meaningful
    /// for sets that pass the sub-Cu test; ∞ is never compact here.
    NbarSub(Arc<NbarSet>),
    /// Direct sum with componentwise structure.
    Sum(Arc<Vec<Carrier>>),
    /// Monotone maps from a finite poset into N̄, pointwise structure.
    Mono(Arc<MonotoneMaps>),
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        use Carrier::*;
        match (self, other) {
            (Finite(a), Finite(b)) | (Limit(a), Limit(b)) => a == b,
            (Nbar, Nbar) => true,
            (NbarSub(a), NbarSub(b)) => a == b,
            (Sum(a), Sum(b)) => a == b,
            (Mono(a), Mono(b)) => a.poset() == b.poset(),
            _ => false,
        }
    }
}

impl Carrier {
    /// Wraps a table after checking every positively-ordered-monoid law.
    pub fn finite(table: FiniteCuTable) -> Result<Carrier> {
        Ok(Carrier::Finite(Arc::new(table.validated()?)))
    }

    /// Wraps a structurally sound table without checking its laws. Used to
    /// report axiom failures on tables that are not positively ordered monoids.
    pub fn finite_unchecked(table: FiniteCuTable) -> Carrier {
        Carrier::Finite(Arc::new(table))
    }

    pub fn chain(m: usize) -> Carrier {
        Carrier::Finite(Arc::new(FiniteCuTable::saturating_chain(m)))
    }

    pub fn trivial() -> Carrier {
        Carrier::Finite(Arc::new(FiniteCuTable::trivial()))
    }

    pub fn table(&self) -> Option<&FiniteCuTable> {
        match self {
            Carrier::Finite(t) | Carrier::Limit(t) => Some(t),
            _ => None,
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            Carrier::Finite(_) => Backend::Finite,
            Carrier::Limit(_) => Backend::Limit,
            _ => Backend::Catalog,
        }
    }

    /// True when the carrier has finitely many elements, so every quantifier
    /// can be evaluated exhaustively.
    pub fn is_finite(&self) -> bool {
        match self {
            Carrier::Finite(_) | Carrier::Limit(_) => true,
            Carrier::NbarSub(s) => !s.finite_part_unbounded(),
            Carrier::Sum(cs) => cs.iter().all(Carrier::is_finite),
            Carrier::Nbar | Carrier::Mono(_) => false,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Carrier::Finite(t) => format!("finite(n={})", t.len()),
            Carrier::Limit(t) => format!("limit(n={})", t.len()),
            Carrier::Nbar => "nbar".into(),
            Carrier::NbarSub(s) => format!("nbar-sub{s}"),
            Carrier::Sum(cs) => {
                let parts: Vec<String> = cs.iter().map(Carrier::describe).collect();
                format!("sum({})", parts.join("+"))
            }
            Carrier::Mono(m) => format!("mono(|P|={})", m.poset().len()),
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Carrier::Finite(_) | Carrier::Limit(_) => Elem::Idx(0),
            Carrier::Nbar | Carrier::NbarSub(_) => Elem::nat(0),
            Carrier::Sum(cs) => Elem::Tuple(cs.iter().map(Carrier::zero).collect()),
            Carrier::Mono(m) => Elem::Tuple(vec![Elem::nat(0); m.poset().len()]),
        }
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (self, x) {
            (Carrier::Finite(t) | Carrier::Limit(t), Elem::Idx(i)) => *i < t.len(),
            (Carrier::Nbar, Elem::Ext(_)) => true,
            (Carrier::NbarSub(s), Elem::Ext(e)) => s.contains(*e),
            (Carrier::Sum(cs), Elem::Tuple(v)) => v.len() == cs.len() && cs.iter().zip(v).all(|(c, e)| c.contains(e)),
            (Carrier::Mono(m), Elem::Tuple(_)) => m.contains(x),
            _ => false,
        }
    }

    pub fn ensure(&self, x: &Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInCarrier(x.to_string()))
        }
    }

    /// `x + y`. Both arguments must belong to the carrier.
    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Carrier::Finite(t) | Carrier::Limit(t), Elem::Idx(a), Elem::Idx(b)) => Elem::Idx(t.add(*a, *b)),
            (Carrier::Nbar | Carrier::NbarSub(_), Elem::Ext(a), Elem::Ext(b)) => Elem::Ext(a.add(*b)),
            (Carrier::Sum(cs), Elem::Tuple(a), Elem::Tuple(b)) => {
                Elem::Tuple(cs.iter().zip(a.iter().zip(b)).map(|(c, (p, q))| c.add(p, q)).collect())
            }
            (Carrier::Mono(_), Elem::Tuple(a), Elem::Tuple(b)) => Elem::Tuple(
                a.iter()
                    .zip(b)
                    .map(|(p, q)| Elem::Ext(ext_of(p).add(ext_of(q))))
                    .collect(),
            ),
            _ => panic!("add: {x} or {y} does not belong to {}", self.describe()),
        }
    }

    /// Sum of a list; the empty sum is zero.
    pub fn sum<'a, I: IntoIterator<Item = &'a Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.zero(), |acc, e| self.add(&acc, e))
    }

    pub fn leq(&self, x: &Elem, y: &Elem) -> bool {
        match (self, x, y) {
            (Carrier::Finite(t) | Carrier::Limit(t), Elem::Idx(a), Elem::Idx(b)) => t.leq(*a, *b),
            (Carrier::Nbar | Carrier::NbarSub(_), Elem::Ext(a), Elem::Ext(b)) => a <= b,
            (Carrier::Sum(cs), Elem::Tuple(a), Elem::Tuple(b)) => {
                cs.iter().zip(a.iter().zip(b)).all(|(c, (p, q))| c.leq(p, q))
            }
            (Carrier::Mono(_), Elem::Tuple(a), Elem::Tuple(b)) => a.iter().zip(b).all(|(p, q)| ext_of(p) <= ext_of(q)),
            _ => panic!("leq: {x} or {y} does not belong to {}", self.describe()),
        }
    }

    /// `x ≪ y` by the backend's rule.
    pub fn waybelow(&self, x: &Elem, y: &Elem) -> bool {
        match (self, x, y) {
            (Carrier::Finite(t) | Carrier::Limit(t), Elem::Idx(a), Elem::Idx(b)) => t.leq(*a, *b),
            (Carrier::Nbar | Carrier::NbarSub(_), Elem::Ext(a), Elem::Ext(b)) => a.way_below(*b),
            (Carrier::Sum(cs), Elem::Tuple(a), Elem::Tuple(b)) => {
                cs.iter().zip(a.iter().zip(b)).all(|(c, (p, q))| c.waybelow(p, q))
            }
            (Carrier::Mono(m), _, _) => m.waybelow(self, x, y),
            _ => panic!("waybelow: {x} or {y} does not belong to {}", self.describe()),
        }
    }

    /// Checked variant of [`Carrier::waybelow`].
    pub fn try_waybelow(&self, x: &Elem, y: &Elem) -> Result<bool> {
        self.ensure(x)?;
        self.ensure(y)?;
        Ok(self.waybelow(x, y))
    }

    /// `k·x`.
    pub fn multiple(&self, x: &Elem, k: u64) -> Elem {
        match (self, x) {
            (Carrier::Finite(t) | Carrier::Limit(t), Elem::Idx(a)) => Elem::Idx(t.multiple(*a, k)),
            (Carrier::Nbar | Carrier::NbarSub(_), Elem::Ext(a)) => Elem::Ext(a.scale(k)),
            (Carrier::Sum(cs), Elem::Tuple(v)) => Elem::Tuple(cs.iter().zip(v).map(|(c, e)| c.multiple(e, k)).collect()),
            (Carrier::Mono(_), Elem::Tuple(v)) => Elem::Tuple(v.iter().map(|e| Elem::Ext(ext_of(e).scale(k))).collect()),
            _ => panic!("multiple: {x} does not belong to {}", self.describe()),
        }
    }

    /// `∞·x = sup_k k·x`.
    pub fn infinite_multiple(&self, x: &Elem) -> Elem {
        let inf_ext = |e: ExtNat| if e == ExtNat::ZERO { ExtNat::ZERO } else { ExtNat::Inf };
        match (self, x) {
            (Carrier::Finite(t) | Carrier::Limit(t), Elem::Idx(a)) => Elem::Idx(t.infinite_multiple(*a)),
            (Carrier::Nbar | Carrier::NbarSub(_), Elem::Ext(a)) => Elem::Ext(inf_ext(*a)),
            (Carrier::Sum(cs), Elem::Tuple(v)) => {
                Elem::Tuple(cs.iter().zip(v).map(|(c, e)| c.infinite_multiple(e)).collect())
            }
            (Carrier::Mono(_), Elem::Tuple(v)) => Elem::Tuple(v.iter().map(|e| Elem::Ext(inf_ext(ext_of(e)))).collect()),
            _ => panic!("infinite_multiple: {x} does not belong to {}", self.describe()),
        }
    }

    /// All elements, when the carrier is finite.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            Carrier::Finite(t) | Carrier::Limit(t) => Some((0..t.len()).map(Elem::Idx).collect()),
            Carrier::NbarSub(s) if !s.finite_part_unbounded() => {
                Some(s.members_upto(s.threshold()).into_iter().map(Elem::Ext).collect())
            }
            Carrier::Sum(cs) if self.is_finite() => {
                let parts: Vec<Vec<Elem>> = cs.iter().map(|c| c.elements().expect("finite component")).collect();
                Some(product(&parts))
            }
            _ => None,
        }
    }

    /// A finite fragment of the carrier, increasing in `level`. On finite
    /// carriers this is every element regardless of `level`.
    pub fn fragment(&self, level: u64) -> Vec<Elem> {
        if let Some(all) = self.elements() {
            return all;
        }
        match self {
            Carrier::Nbar => (0..=level).map(Elem::nat).chain([Elem::INF]).collect(),
            Carrier::NbarSub(s) => s.members_upto(level).into_iter().map(Elem::Ext).collect(),
            Carrier::Sum(cs) => product(&cs.iter().map(|c| c.fragment(level)).collect::<Vec<_>>()),
            Carrier::Mono(m) => m.maps_with_values(level, true),
            Carrier::Finite(_) | Carrier::Limit(_) => unreachable!(),
        }
    }

    /// A finite part of a basis, increasing in `level`. On finite carriers
    /// the only basis is the whole carrier, since every element is compact.
    pub fn basis_fragment(&self, level: u64) -> Vec<Elem> {
        match self {
            Carrier::Finite(_) | Carrier::Limit(_) => self.elements().expect("finite"),
            Carrier::Nbar => (0..=level).map(Elem::nat).collect(),
            Carrier::NbarSub(s) => s.finite_members_upto(level).into_iter().map(Elem::nat).collect(),
            Carrier::Sum(cs) => product(&cs.iter().map(|c| c.basis_fragment(level)).collect::<Vec<_>>()),
            Carrier::Mono(m) => m.maps_with_values(level, false),
        }
    }

    /// The `i`-th basis element in a fixed enumeration: total on finite
    /// carriers, level-by-level on infinite ones.
    pub fn basis_enum(&self, i: usize) -> Option<Elem> {
        if let Some(t) = self.table() {
            return (i < t.len()).then_some(Elem::Idx(i));
        }
        let mut seen: Vec<Elem> = Vec::new();
        for level in 0..=(i as u64 + 64) {
            for e in self.basis_fragment(level) {
                if !seen.contains(&e) {
                    seen.push(e);
                }
            }
            if seen.len() > i {
                return Some(seen[i].clone());
            }
        }
        None
    }

    /// The deterministic choice of a ≪-increasing sequence with supremum `x`.
    pub fn approximating_chain(&self, x: &Elem) -> ChainDescr {
        match (self, x) {
            (Carrier::Nbar, Elem::Ext(ExtNat::Inf)) => ChainDescr::Arithmetic { start: 0, step: 1 },
            (Carrier::NbarSub(s), Elem::Ext(ExtNat::Inf)) if s.finite_part_unbounded() => {
                let start = s.next_member(s.threshold()).expect("unbounded finite part has members past the threshold");
                ChainDescr::Arithmetic { start, step: s.period() }
            }
            (Carrier::Sum(cs), Elem::Tuple(v)) => {
                ChainDescr::Componentwise(cs.iter().zip(v).map(|(c, e)| c.approximating_chain(e)).collect())
            }
            (Carrier::Mono(m), Elem::Tuple(_)) => {
                ChainDescr::Truncation { base: Elem::Tuple(vec![Elem::nat(0); m.poset().len()]), target: x.clone() }
            }
            _ => ChainDescr::EventuallyConstant { prefix: vec![], value: x.clone() },
        }
    }

    /// Parses an element in this carrier's canonical encoding.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let e = match self {
            Carrier::Finite(_) | Carrier::Limit(_) => {
                Elem::Idx(s.parse().map_err(|_| Error::InvalidElement(s.to_string()))?)
            }
            Carrier::Nbar | Carrier::NbarSub(_) => Elem::Ext(s.parse()?),
            Carrier::Sum(cs) => {
                let parts = split_tuple(s)?;
                if parts.len() != cs.len() {
                    return Err(Error::InvalidElement(s.to_string()));
                }
                Elem::Tuple(cs.iter().zip(parts).map(|(c, p)| c.parse_elem(p)).collect::<Result<_>>()?)
            }
            Carrier::Mono(_) => {
                let parts = split_tuple(s)?;
                Elem::Tuple(parts.into_iter().map(|p| p.parse::<ExtNat>().map(Elem::Ext)).collect::<Result<_>>()?)
            }
        };
        self.ensure(&e)?;
        Ok(e)
    }
}

pub(crate) fn ext_of(e: &Elem) -> ExtNat {
    e.ext().expect("extended-natural coordinate")
}

/// Cartesian product in lexicographic order.
pub(crate) fn product(parts: &[Vec<Elem>]) -> Vec<Elem> {
    let mut out: Vec<Vec<Elem>> = vec![vec![]];
    for part in parts {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                part.iter().map(move |e| {
                    let mut p = prefix.clone();
                    p.push(e.clone());
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Elem::Tuple).collect()
}

fn split_tuple(s: &str) -> Result<Vec<&str>> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidElement(s.to_string()))?;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nbar_waybelow_rule() {
        let s = Carrier::Nbar;
        assert!(s.waybelow(&Elem::nat(3), &Elem::nat(5)));
        assert!(!s.waybelow(&Elem::INF, &Elem::INF));
        assert!(s.waybelow(&Elem::nat(0), &Elem::INF));
        assert!(s.try_waybelow(&Elem::Idx(0), &Elem::nat(1)).is_err());
    }

    #[test]
    fn zero_is_waybelow_everything() {
        let carriers = [Carrier::chain(3), Carrier::Nbar, direct_sum(&Carrier::Nbar, &Carrier::chain(2))];
        for c in &carriers {
            for y in c.fragment(3) {
                assert!(c.waybelow(&c.zero(), &y), "{} {y}", c.describe());
            }
        }
    }

    #[test]
    fn parse_elements() {
        let s = direct_sum(&Carrier::Nbar, &Carrier::chain(2));
        assert_eq!(s.parse_elem("(inf,2)").unwrap(), Elem::Tuple(vec![Elem::INF, Elem::Idx(2)]));
        assert!(s.parse_elem("(inf,3)").is_err());
        assert!(Carrier::chain(2).parse_elem("7").is_err());
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(Carrier::chain(2).basis_enum(2), Some(Elem::Idx(2)));
        assert_eq!(Carrier::chain(2).basis_enum(3), None);
        assert_eq!(Carrier::Nbar.basis_enum(7), Some(Elem::nat(7)));
        let s = direct_sum(&Carrier::Nbar, &Carrier::Nbar);
        let first: Vec<Elem> = (0..4).map(|i| s.basis_enum(i).unwrap()).collect();
        assert_eq!(first[0], Elem::Tuple(vec![Elem::nat(0), Elem::nat(0)]));
        assert!(first.contains(&Elem::Tuple(vec![Elem::nat(1), Elem::nat(0)])));
        assert!(first.contains(&Elem::Tuple(vec![Elem::nat(0), Elem::nat(1)])));
    }

    #[test]
    fn infinite_multiples() {
        assert_eq!(Carrier::Nbar.infinite_multiple(&Elem::nat(3)), Elem::INF);
        assert_eq!(Carrier::Nbar.infinite_multiple(&Elem::nat(0)), Elem::nat(0));
        assert_eq!(Carrier::chain(3).infinite_multiple(&Elem::Idx(1)), Elem::Idx(3));
    }
}
