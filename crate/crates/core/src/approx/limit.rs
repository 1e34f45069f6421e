//! Inductive limits of finite chains of tables.
//!
//! A thread is a pair `(stage, element)`. Two threads are identified when
//! their images agree at some later stage. Images that agree once agree
//! forever, so on a finite chain the class of a thread is its image at the
//! last stage.

use std::sync::Arc;

use serde::Serialize;

use super::approximation::{check_approximates, ApproxFamily, ApproxReport, QueryBounds};
use super::morphism::{validate_morphism, CuMorphismRepr, MapRule};
use crate::carrier::{Carrier, Elem};
use crate::error::{Error, Result};
use crate::verdict::{Verdict, Witness};

/// Finite carriers `S_0 → S_1 → … → S_{L-1}` with connecting morphisms.
#[derive(Clone, Debug)]
pub struct ChainSystem {
    stages: Vec<Carrier>,
    maps: Vec<CuMorphismRepr>,
}

impl ChainSystem {
    pub fn new(stages: Vec<Carrier>, maps: Vec<CuMorphismRepr>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::InvalidParams("a chain needs at least one stage".into()));
        }
        if maps.len() + 1 != stages.len() {
            return Err(Error::InvalidParams(format!("{} stages need {} maps, got {}", stages.len(), stages.len() - 1, maps.len())));
        }
        if let Some(s) = stages.iter().find(|s| s.table().is_none()) {
            return Err(Error::Unsupported("limit".into(), s.describe()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.source != stages[i] || m.target != stages[i + 1] {
                return Err(Error::InvalidMorphism(format!("map {i} does not connect stage {i} to stage {}", i + 1)));
            }
            if !m.flags.is_cu_morphism() {
                return Err(Error::InvalidMorphism(format!("map {i} is not a Cu-morphism")));
            }
        }
        Ok(ChainSystem { stages, maps })
    }

    /// `C_1 → C_2 → C_4 → …` with doubling maps, `len` stages.
    pub fn doubling_chains(len: usize) -> Result<Self> {
        let stages: Vec<Carrier> = (0..len).map(|i| Carrier::chain(1 << i)).collect();
        let maps = (1..len).map(|i| super::morphism::chain_scaling(1 << (i - 1), 2)).collect::<Result<_>>()?;
        Self::new(stages, maps)
    }

    /// `len` copies of `s` joined by identities.
    pub fn constant(s: &Carrier, len: usize) -> Result<Self> {
        let maps = (1..len).map(|_| validate_morphism(s, s, MapRule::Identity, 0)).collect::<Result<_>>()?;
        Self::new(vec![s.clone(); len], maps)
    }

    pub fn stages(&self) -> &[Carrier] {
        &self.stages
    }

    pub fn maps(&self) -> &[CuMorphismRepr] {
        &self.maps
    }

    /// `φ_{μ,λ}` applied to `x ∈ S_λ`.
    pub fn connect(&self, lambda: usize, mu: usize, x: &Elem) -> Elem {
        (lambda..mu).fold(x.clone(), |acc, i| self.maps[i].apply(&acc))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitRepr {
    #[serde(skip)]
    pub carrier: Carrier,
    /// Class of each thread, indexed `[stage][element]`.
    pub class_of: Vec<Vec<usize>>,
    /// The canonical maps `φ_λ: S_λ → S`.
    pub canonical: Vec<CuMorphismRepr>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub stages: usize,
    pub threads: usize,
    pub classes: usize,
    /// `φ_μ ∘ φ_{λ,μ} = φ_λ` for all stages `λ ≤ μ`.
    pub compatible: Verdict,
    /// `φ_λ(x) ≪ φ_μ(y)` implies `x ≪ y` after connecting to a common later stage.
    pub waybelow_lifts: Verdict,
    /// Every `x' ≪ x` in the limit has some `φ_λ(y)` with `x' ≪ φ_λ(y) ≪ x`.
    pub images_interpolate: Verdict,
    pub approximates: ApproxReport,
}

impl LimitReport {
    pub fn all_hold(&self) -> bool {
        self.compatible.holds() && self.waybelow_lifts.holds() && self.images_interpolate.holds() && self.approximates.verdict.holds()
    }
}

/// Builds the limit, checks the three limit conditions exhaustively and runs the
/// approximation corpus for the canonical family.
pub fn build_limit(sys: &ChainSystem, bounds: QueryBounds) -> Result<(LimitRepr, LimitReport)> {
    let last = sys.stages.len() - 1;
    let size = |i: usize| sys.stages[i].table().expect("finite stages").len();
    let image_at_last: Vec<Vec<usize>> = (0..=last)
        .map(|l| (0..size(l)).map(|x| sys.connect(l, last, &Elem::Idx(x)).idx().expect("index")).collect())
        .collect();
    let mut used: Vec<usize> = image_at_last.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let (table, members) = sys.stages[last].table().expect("finite").restrict(&used)?;
    let carrier = Carrier::Limit(Arc::new(table));
    let class_of: Vec<Vec<usize>> = image_at_last
        .iter()
        .map(|row| row.iter().map(|v| members.binary_search(v).expect("member")).collect())
        .collect();
    let canonical = (0..=last)
        .map(|l| {
            let images = class_of[l].iter().map(|&c| Elem::Idx(c)).collect();
            validate_morphism(&sys.stages[l], &carrier, MapRule::Table { images }, 0)
        })
        .collect::<Result<Vec<_>>>()?;

    let phi = |l: usize, x: usize| Elem::Idx(class_of[l][x]);
    let compatible = first_failure((0..=last).flat_map(|l| (l..=last).map(move |m| (l, m))).flat_map(|(l, m)| {
        (0..size(l)).filter_map(move |x| {
            let via = sys.connect(l, m, &Elem::Idx(x)).idx().expect("index");
            (phi(m, via) != phi(l, x)).then(|| Witness::new().with("lambda", Elem::Idx(l)).with("mu", Elem::Idx(m)).with("x", Elem::Idx(x)))
        })
    }));
    let mut waybelow_lifts = Verdict::Holds;
    'outer: for l in 0..=last {
        for m in 0..=last {
            for x in 0..size(l) {
                for y in 0..size(m) {
                    if !carrier.waybelow(&phi(l, x), &phi(m, y)) {
                        continue;
                    }
                    let ok = (l.max(m)..=last).any(|n| {
                        sys.stages[n].waybelow(&sys.connect(l, n, &Elem::Idx(x)), &sys.connect(m, n, &Elem::Idx(y)))
                    });
                    if !ok {
                        waybelow_lifts = Verdict::fails(Witness::new().with("x", Elem::Idx(x)).with("y", Elem::Idx(y)));
                        break 'outer;
                    }
                }
            }
        }
    }
    let elems = carrier.elements().expect("finite");
    let images_interpolate = first_failure(elems.iter().flat_map(|x| {
        elems.iter().filter(|xp| carrier.waybelow(xp, x)).filter_map(|xp| {
            let ok = (0..=last).any(|l| (0..size(l)).any(|y| carrier.waybelow(xp, &phi(l, y)) && carrier.waybelow(&phi(l, y), x)));
            (!ok).then(|| Witness::new().with("x'", xp.clone()).with("x", x.clone()))
        })
    }));
    let family = ApproxFamily::new(carrier.clone(), canonical.clone())?;
    let approximates = check_approximates(&family, bounds, 0)?;
    let threads = (0..=last).map(size).sum();
    let report = LimitReport { stages: last + 1, threads, classes: used.len(), compatible, waybelow_lifts, images_interpolate, approximates };
    Ok((LimitRepr { carrier, class_of, canonical }, report))
}

fn first_failure(mut it: impl Iterator<Item = Witness>) -> Verdict {
    it.next().map_or(Verdict::Holds, Verdict::fails)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::FiniteCuTable;

    #[test]
    fn doubling_chain_limit_is_the_last_chain() {
        for len in 1..=4 {
            let sys = ChainSystem::doubling_chains(len).unwrap();
            let (lim, report) = build_limit(&sys, QueryBounds { random: 20, ..Default::default() }).unwrap();
            let expected = FiniteCuTable::saturating_chain(1 << (len - 1));
            assert!(lim.carrier.table().unwrap().isomorphism_to(&expected).is_some());
            assert!(report.all_hold(), "{report:?}");
        }
    }

    #[test]
    fn constant_chain_limit() {
        let s = Carrier::chain(2);
        let (lim, report) = build_limit(&ChainSystem::constant(&s, 3).unwrap(), QueryBounds { random: 10, ..Default::default() }).unwrap();
        assert_eq!(lim.carrier.table(), s.table());
        assert!(report.all_hold());
    }

    #[test]
    fn mismatched_maps_are_rejected() {
        let f = super::super::morphism::chain_scaling(1, 2).unwrap();
        let r = ChainSystem::new(vec![Carrier::chain(1), Carrier::chain(3)], vec![f]);
        assert!(matches!(r, Err(Error::InvalidMorphism(_))));
    }
}
