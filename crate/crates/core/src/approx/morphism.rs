//! Maps between carriers and the checks that make them Cu-morphisms.

use serde::Serialize;

use crate::carrier::oracle::chain_family;
use crate::carrier::{Carrier, Elem};
use crate::error::{Error, Result};
use crate::verdict::{search_levels, Budget, Level, Verdict, Witness};

/// How a map computes images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum MapRule {
    /// Image of every element of a finite source, by index.
    Table { images: Vec<Elem> },
    /// `x ↦ k·x`, with `x` read as an element of the target.
    Scale { factor: u64 },
    /// The source is a subset of the target with the same encoding.
    Inclusion,
    Identity,
    Zero,
}

/// Per-property results. `order_embedding` is the `≤`-reflection form and
/// `waybelow_reflection` the `≪`-reflection form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismFlags {
    pub monoid: Verdict,
    pub order: Verdict,
    pub sup: Verdict,
    pub waybelow: Verdict,
    pub order_embedding: Verdict,
    pub waybelow_reflection: Verdict,
}

impl MorphismFlags {
    /// Monoid, order, sup and `≪` preservation all survived their checks.
    pub fn is_cu_morphism(&self) -> bool {
        [&self.monoid, &self.order, &self.sup, &self.waybelow].iter().all(|v| v.not_refuted())
    }

    /// Both reflection forms gave the same kind of answer.
    pub fn embedding_forms_agree(&self) -> bool {
        self.order_embedding.is_fail() == self.waybelow_reflection.is_fail()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuMorphismRepr {
    #[serde(skip)]
    pub source: Carrier,
    #[serde(skip)]
    pub target: Carrier,
    #[serde(flatten)]
    pub rule: MapRule,
    pub flags: MorphismFlags,
}

impl CuMorphismRepr {
    pub fn apply(&self, x: &Elem) -> Elem {
        apply(&self.target, &self.rule, x)
    }
}

fn apply(target: &Carrier, rule: &MapRule, x: &Elem) -> Elem {
    match rule {
        MapRule::Table { images } => images[x.idx().expect("table source")].clone(),
        MapRule::Scale { factor } => target.multiple(x, *factor),
        MapRule::Inclusion | MapRule::Identity => x.clone(),
        MapRule::Zero => target.zero(),
    }
}

fn sample(source: &Carrier, level: u64) -> Vec<Elem> {
    source.elements().unwrap_or_else(|| source.fragment(level))
}

/// Checks every property of `rule` as a map `source → target`.
///
/// Finite sources are checked exhaustively. Infinite sources are checked on
/// fragments of increasing level until `fuel` runs out, so a passing flag
/// reads "holds up to fuel". Images outside the target are an error, not a
/// failed flag.
pub fn validate_morphism(source: &Carrier, target: &Carrier, rule: MapRule, fuel: u64) -> Result<CuMorphismRepr> {
    let finite = source.is_finite();
    if !finite && fuel == 0 {
        return Err(Error::ZeroBound("fuel".into()));
    }
    if let MapRule::Table { images } = &rule {
        let n = source.table().ok_or_else(|| Error::InvalidMorphism("table map on an infinite source".into()))?.len();
        if images.len() != n {
            return Err(Error::InvalidMorphism(format!("{} images for {n} source elements", images.len())));
        }
    }
    if matches!(rule, MapRule::Identity) && source != target {
        return Err(Error::InvalidMorphism("identity between different carriers".into()));
    }
    for x in sample(source, 8) {
        let y = apply(target, &rule, &x);
        if !target.contains(&y) {
            return Err(Error::InvalidMorphism(format!("{x} maps to {y}, which is not in {}", target.describe())));
        }
    }
    let f = |x: &Elem| apply(target, &rule, x);
    let pairs = |pred: &dyn Fn(&Elem, &Elem) -> Option<Witness>| {
        search_levels(finite, fuel, |level, budget: &Budget| {
            let s = sample(source, level);
            for x in &s {
                for y in &s {
                    if !budget.spend(1) {
                        return Level::OutOfFuel;
                    }
                    if let Some(w) = pred(x, y) {
                        return Level::Failed(w);
                    }
                }
            }
            Level::Done
        })
    };
    let wit = |x: &Elem, y: &Elem| Witness::new().with("x", x.clone()).with("y", y.clone());

    let monoid = if f(&source.zero()) != target.zero() {
        Verdict::fails(Witness::new().with("x", source.zero()))
    } else {
        pairs(&|x, y| (f(&source.add(x, y)) != target.add(&f(x), &f(y))).then(|| wit(x, y)))
    };
    let order = pairs(&|x, y| (source.leq(x, y) && !target.leq(&f(x), &f(y))).then(|| wit(x, y)));
    let waybelow = pairs(&|x, y| (source.waybelow(x, y) && !target.waybelow(&f(x), &f(y))).then(|| wit(x, y)));
    let order_embedding = pairs(&|x, y| (target.leq(&f(x), &f(y)) && !source.leq(x, y)).then(|| wit(x, y)));
    let waybelow_reflection =
        pairs(&|x, y| (target.waybelow(&f(x), &f(y)) && !source.waybelow(x, y)).then(|| wit(x, y)));
    let sup = sup_preservation(source, target, &f, finite, fuel);
    let flags = MorphismFlags { monoid, order, sup, waybelow, order_embedding, waybelow_reflection };
    Ok(CuMorphismRepr { source: source.clone(), target: target.clone(), rule, flags })
}

/// For each sampled chain with supremum `s`, `f(s)` must bound the images of
/// the terms and every `t ≪ f(s)` in the target fragment must lie below
/// some image term.
fn sup_preservation(source: &Carrier, target: &Carrier, f: &dyn Fn(&Elem) -> Elem, finite: bool, fuel: u64) -> Verdict {
    search_levels(finite, fuel, |level, budget: &Budget| {
        let probes = target.elements().unwrap_or_else(|| target.fragment(level));
        let terms = 4 * level + 4;
        for chain in chain_family(source, level) {
            let Ok(s) = source.sup_chain(&chain) else { continue };
            let fs = f(&s);
            let images: Vec<Elem> = (0..=terms).map(|k| f(&chain.term(source, k))).collect();
            if !budget.spend(1 + probes.len() as u64) {
                return Level::OutOfFuel;
            }
            let w = || Witness::new().with("sup", s.clone()).with("f(sup)", fs.clone());
            if images.iter().any(|y| !target.leq(y, &fs)) {
                return Level::Failed(w());
            }
            if let Some(t) = probes.iter().find(|t| target.waybelow(t, &fs) && !images.iter().any(|y| target.leq(t, y))) {
                return Level::Failed(w().with("t", t.clone()));
            }
        }
        Level::Done
    })
}

/// The order-embedding verdict, after checking that the `≤`-reflection and
/// `≪`-reflection forms agree.
pub fn is_order_embedding(f: &CuMorphismRepr) -> Result<Verdict> {
    if !f.flags.embedding_forms_agree() {
        return Err(Error::LawViolation(format!(
            "order-embedding forms disagree: {} vs {}",
            f.flags.order_embedding.label(),
            f.flags.waybelow_reflection.label()
        )));
    }
    Ok(f.flags.order_embedding.clone())
}

/// `x ↦ 2x` on N̄.
pub fn doubling_on_nbar(fuel: u64) -> Result<CuMorphismRepr> {
    validate_morphism(&Carrier::Nbar, &Carrier::Nbar, MapRule::Scale { factor: 2 }, fuel)
}

/// The map `C_m → C_{km}` sending `i` to `k·i`.
pub fn chain_scaling(m: usize, k: usize) -> Result<CuMorphismRepr> {
    let images = (0..=m).map(|i| Elem::Idx(i * k)).collect();
    validate_morphism(&Carrier::chain(m), &Carrier::chain(m * k), MapRule::Table { images }, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_is_an_embedding() {
        let f = doubling_on_nbar(5_000).unwrap();
        assert!(f.flags.is_cu_morphism());
        assert!(is_order_embedding(&f).unwrap().not_refuted());
    }

    #[test]
    fn zero_map_is_not_an_embedding() {
        let c = Carrier::chain(2);
        let f = validate_morphism(&c, &c, MapRule::Zero, 0).unwrap();
        assert!(f.flags.is_cu_morphism());
        let v = is_order_embedding(&f).unwrap();
        let w = v.witness().unwrap();
        assert!(!c.leq(w.get("x").unwrap(), w.get("y").unwrap()));
    }

    #[test]
    fn collapse_fails_reflection() {
        let images = vec![Elem::Idx(0), Elem::Idx(1), Elem::Idx(1)];
        let f = validate_morphism(&Carrier::chain(2), &Carrier::chain(1), MapRule::Table { images }, 0).unwrap();
        assert!(f.flags.is_cu_morphism());
        assert!(is_order_embedding(&f).unwrap().is_fail());
    }

    #[test]
    fn identity_and_scaling() {
        let f = validate_morphism(&Carrier::chain(3), &Carrier::chain(3), MapRule::Identity, 0).unwrap();
        assert!(f.flags.is_cu_morphism() && f.flags.order_embedding.holds());
        let g = chain_scaling(2, 2).unwrap();
        assert!(g.flags.is_cu_morphism() && g.flags.order_embedding.holds());
    }

    #[test]
    fn non_additive_map_is_caught() {
        let images = vec![Elem::Idx(0), Elem::Idx(2), Elem::Idx(2)];
        let f = validate_morphism(&Carrier::chain(2), &Carrier::chain(3), MapRule::Table { images }, 0).unwrap();
        assert!(f.flags.monoid.is_fail());
    }

    #[test]
    fn images_must_land_in_the_target() {
        let images = vec![Elem::Idx(0), Elem::Idx(5)];
        let r = validate_morphism(&Carrier::chain(1), &Carrier::chain(2), MapRule::Table { images }, 0);
        assert!(matches!(r, Err(Error::InvalidMorphism(_))));
    }
}
