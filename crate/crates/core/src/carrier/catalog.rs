//! Named catalog instances: N̄, saturating chains, direct sums, and monotone
//! maps from a finite poset into N̄.

use std::sync::Arc;

use super::{ext_of, oracle, Carrier, Elem, ExtNat, FiniteCuTable};
use crate::error::{Error, Result};

/// A finite partial order on `{0, ..., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosetDescr {
    n: usize,
    leq: Vec<bool>,
}

impl PosetDescr {
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if n == 0 || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParams("poset relation must be a non-empty square table".into()));
        }
        let at = |a: usize, b: usize| leq[a][b];
        for a in 0..n {
            if !at(a, a) {
                return Err(Error::InvalidParams(format!("poset is not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && at(a, b) && at(b, a) {
                    return Err(Error::InvalidParams(format!("poset is not antisymmetric at ({a},{b})")));
                }
                for c in 0..n {
                    if at(a, b) && at(b, c) && !at(a, c) {
                        return Err(Error::InvalidParams(format!("poset is not transitive at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(PosetDescr { n, leq: leq.into_iter().flatten().collect() })
    }

    pub fn antichain(k: usize) -> Self {
        Self::new((0..k).map(|a| (0..k).map(|b| a == b).collect()).collect()).expect("antichain is a poset")
    }

    pub fn chain(k: usize) -> Self {
        Self::new((0..k).map(|a| (0..k).map(|b| a <= b).collect()).collect()).expect("chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

/// How way-below is decided on monotone maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaybelowMode {
    /// Pointwise way-below in N̄.
    ClosedForm,
    /// The definitional chain test; used if the closed form was refuted.
    Definitional,
}

/// Monotone maps `P → N̄` with pointwise order and addition.
#[derive(Clone, Debug)]
pub struct MonotoneMaps {
    poset: PosetDescr,
    mode: WaybelowMode,
}

impl MonotoneMaps {
    pub fn new(poset: PosetDescr, mode: WaybelowMode) -> Self {
        MonotoneMaps { poset, mode }
    }

    pub fn poset(&self) -> &PosetDescr {
        &self.poset
    }

    pub fn mode(&self) -> WaybelowMode {
        self.mode
    }

    pub(crate) fn contains(&self, x: &Elem) -> bool {
        let Some(v) = x.tuple() else { return false };
        if v.len() != self.poset.len() || v.iter().any(|e| e.ext().is_none()) {
            return false;
        }
        self.is_monotone(&v.iter().map(ext_of).collect::<Vec<_>>())
    }

    fn is_monotone(&self, v: &[ExtNat]) -> bool {
        let n = self.poset.len();
        (0..n).all(|a| (0..n).all(|b| !self.poset.leq(a, b) || v[a] <= v[b]))
    }

    /// The closed-form candidate: pointwise `≪` in N̄.
    pub fn waybelow_closed_form(x: &Elem, y: &Elem) -> bool {
        let (a, b) = (x.tuple().expect("tuple"), y.tuple().expect("tuple"));
        a.iter().zip(b).all(|(p, q)| ext_of(p).way_below(ext_of(q)))
    }

    pub(crate) fn waybelow(&self, carrier: &Carrier, x: &Elem, y: &Elem) -> bool {
        match self.mode {
            WaybelowMode::ClosedForm => Self::waybelow_closed_form(x, y),
            WaybelowMode::Definitional => {
                let level = [x, y]
                    .iter()
                    .flat_map(|e| e.tuple().expect("tuple").iter().filter_map(|c| ext_of(c).finite()))
                    .max()
                    .unwrap_or(0)
                    + 1;
                oracle::definitional_waybelow(carrier, x, y, level)
            }
        }
    }

    /// All monotone maps with values in `{0, ..., level}` (and ∞ if asked),
    /// in lexicographic order.
    pub(crate) fn maps_with_values(&self, level: u64, with_inf: bool) -> Vec<Elem> {
        let mut values: Vec<ExtNat> = (0..=level).map(ExtNat::Fin).collect();
        if with_inf {
            values.push(ExtNat::Inf);
        }
        let n = self.poset.len();
        let mut out = Vec::new();
        let mut cur = vec![ExtNat::ZERO; n];
        fn go(m: &MonotoneMaps, values: &[ExtNat], cur: &mut Vec<ExtNat>, k: usize, out: &mut Vec<Elem>) {
            if k == cur.len() {
                if m.is_monotone(cur) {
                    out.push(Elem::Tuple(cur.iter().map(|&e| Elem::Ext(e)).collect()));
                }
                return;
            }
            for &v in values {
                // prune on already assigned coordinates
                if (0..k).all(|a| (!m.poset.leq(a, k) || cur[a] <= v) && (!m.poset.leq(k, a) || v <= cur[a])) {
                    cur[k] = v;
                    go(m, values, cur, k + 1, out);
                }
            }
        }
        go(self, &values, &mut cur, 0, &mut out);
        let _ = n;
        out
    }
}

/// The named instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogId {
    /// `N̄ = {0, 1, ..., ∞}`.
    NbarOmega,
    /// `C_m = {0, ..., m}` with saturating addition.
    SaturatingChain(usize),
    DirectSum(Vec<CatalogId>),
    /// Monotone maps from the poset into N̄.
    MonotoneMaps(PosetDescr),
}

/// Builds the carrier for a catalog id.
///
/// For monotone maps the pointwise way-below formula is checked against
/// the definitional chain test first; if the check finds a discrepancy the
/// carrier falls back to the definitional test.
pub fn instantiate_catalog(id: &CatalogId) -> Result<Carrier> {
    match id {
        CatalogId::NbarOmega => Ok(Carrier::Nbar),
        CatalogId::SaturatingChain(m) => {
            if *m == 0 {
                return Err(Error::InvalidParams("chain length must be at least 1".into()));
            }
            Ok(Carrier::Finite(Arc::new(FiniteCuTable::saturating_chain(*m))))
        }
        CatalogId::DirectSum(parts) => {
            if parts.is_empty() {
                return Err(Error::InvalidParams("a direct sum needs at least one summand".into()));
            }
            let carriers = parts.iter().map(instantiate_catalog).collect::<Result<Vec<_>>>()?;
            Ok(carriers[1..].iter().fold(carriers[0].clone(), |acc, c| direct_sum(&acc, c)))
        }
        CatalogId::MonotoneMaps(p) => {
            let candidate = Carrier::Mono(Arc::new(MonotoneMaps::new(p.clone(), WaybelowMode::ClosedForm)));
            let report = oracle::validate_waybelow(&candidate, oracle::DEFAULT_WAYBELOW_FUEL)?;
            if report.agreement {
                Ok(candidate)
            } else {
                Ok(Carrier::Mono(Arc::new(MonotoneMaps::new(p.clone(), WaybelowMode::Definitional))))
            }
        }
    }
}

/// `S ⊕ T`. Two table-backed carriers give a table; otherwise a catalog
/// sum whose summands are flattened.
pub fn direct_sum(s: &Carrier, t: &Carrier) -> Carrier {
    if let (Some(a), Some(b)) = (s.table(), t.table()) {
        return Carrier::Finite(Arc::new(a.direct_sum(b)));
    }
    let mut parts = Vec::new();
    for c in [s, t] {
        match c {
            Carrier::Sum(cs) => parts.extend(cs.iter().cloned()),
            other => parts.push(other.clone()),
        }
    }
    Carrier::Sum(Arc::new(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_catalog_matches_table() {
        let c = instantiate_catalog(&CatalogId::SaturatingChain(3)).unwrap();
        assert_eq!(c.table().unwrap(), &FiniteCuTable::saturating_chain(3));
        assert!(instantiate_catalog(&CatalogId::SaturatingChain(0)).is_err());
    }

    #[test]
    fn two_bit_sum_is_a_table() {
        let c = instantiate_catalog(&CatalogId::DirectSum(vec![
            CatalogId::SaturatingChain(1),
            CatalogId::SaturatingChain(1),
        ]))
        .unwrap();
        assert_eq!(c.table().unwrap().len(), 4);
    }

    #[test]
    fn mixed_sum_is_catalog() {
        let c = instantiate_catalog(&CatalogId::DirectSum(vec![CatalogId::NbarOmega, CatalogId::SaturatingChain(2)]))
            .unwrap();
        assert!(matches!(c, Carrier::Sum(_)));
        assert!(c.contains(&Elem::Tuple(vec![Elem::INF, Elem::Idx(2)])));
    }

    #[test]
    fn monotone_maps_keep_closed_form() {
        let c = instantiate_catalog(&CatalogId::MonotoneMaps(PosetDescr::chain(2))).unwrap();
        let Carrier::Mono(m) = &c else { panic!() };
        assert_eq!(m.mode(), WaybelowMode::ClosedForm);
        let f = Elem::Tuple(vec![Elem::nat(1), Elem::nat(1)]);
        let g = Elem::Tuple(vec![Elem::nat(1), Elem::INF]);
        let h = Elem::Tuple(vec![Elem::nat(0), Elem::INF]);
        assert!(c.waybelow(&f, &g));
        assert!(!c.waybelow(&h, &g));
        assert!(!c.contains(&Elem::Tuple(vec![Elem::nat(2), Elem::nat(1)])));
    }

    #[test]
    fn poset_validation() {
        assert!(PosetDescr::new(vec![vec![true, true], vec![true, true]]).is_err());
        assert!(PosetDescr::new(vec![vec![false]]).is_err());
        assert_eq!(PosetDescr::antichain(3).len(), 3);
    }
}
