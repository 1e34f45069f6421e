//! Families of Cu-morphisms into a carrier and the bounded check that they
//! approximate it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::morphism::CuMorphismRepr;
use crate::carrier::{Carrier, Elem, ExtNat};
use crate::error::{Error, Result};
use crate::verdict::{Budget, Verdict, Witness};

/// Members `φ_λ: S_λ → S` for a fixed target `S`.
#[derive(Clone, Debug)]
pub struct ApproxFamily {
    pub target: Carrier,
    pub members: Vec<CuMorphismRepr>,
}

impl ApproxFamily {
    /// Every member must map into `target` and carry non-refuted Cu-morphism
    /// flags.
    pub fn new(target: Carrier, members: Vec<CuMorphismRepr>) -> Result<Self> {
        for (i, m) in members.iter().enumerate() {
            if m.target != target {
                return Err(Error::InvalidMorphism(format!("member {i} maps into {}", m.target.describe())));
            }
            if !m.flags.is_cu_morphism() {
                return Err(Error::InvalidMorphism(format!("member {i} is not a Cu-morphism")));
            }
        }
        Ok(ApproxFamily { target, members })
    }

    pub fn identity(target: &Carrier, fuel: u64) -> Result<Self> {
        let id = super::morphism::validate_morphism(target, target, super::morphism::MapRule::Identity, fuel)?;
        Self::new(target.clone(), vec![id])
    }
}

/// One instance of the approximation property: elements `x'_j ≪ x_j` and
/// coefficient rows `m_k`, `n_k` with `Σ m_k(j)x_j ≪ Σ n_k(j)x'_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproxQuery {
    pub x_prime: Vec<Elem>,
    pub x: Vec<Elem>,
    pub m: Vec<Vec<u64>>,
    pub n: Vec<Vec<u64>>,
}

fn combination(c: &Carrier, coeffs: &[u64], xs: &[Elem]) -> Elem {
    let parts: Vec<Elem> = coeffs.iter().zip(xs).map(|(&k, x)| c.multiple(x, k)).collect();
    c.sum(&parts)
}

impl ApproxQuery {
    /// Checks shapes and the premise in `c`.
    pub fn validate(&self, c: &Carrier) -> Result<()> {
        let j = self.x.len();
        let bad = |why: String| Err(Error::MalformedQuery(why));
        if self.x_prime.len() != j || self.m.len() != self.n.len() {
            return bad("length mismatch".into());
        }
        if self.m.iter().chain(&self.n).any(|row| row.len() != j) {
            return bad("coefficient row of the wrong length".into());
        }
        for (xp, x) in self.x_prime.iter().zip(&self.x) {
            c.ensure(xp)?;
            c.ensure(x)?;
            if !c.waybelow(xp, x) {
                return bad(format!("{xp} is not way-below {x}"));
            }
        }
        for (k, (m, n)) in self.m.iter().zip(&self.n).enumerate() {
            if !c.waybelow(&combination(c, m, &self.x), &combination(c, n, &self.x_prime)) {
                return bad(format!("premise fails for row {k}"));
            }
        }
        Ok(())
    }

    fn describe(&self) -> Witness {
        let mut w = Witness::new();
        for (j, (xp, x)) in self.x_prime.iter().zip(&self.x).enumerate() {
            w = w.with(format!("x'{j}"), xp.clone()).with(format!("x{j}"), x.clone());
        }
        w
    }
}

/// Limits on the generated query corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QueryBounds {
    /// Largest `|J|`.
    pub j: usize,
    /// Largest `|K|`.
    pub k: usize,
    /// Largest coefficient.
    pub coeff: u64,
    /// Randomly drawn queries on top of the exhaustive single-element ones.
    pub random: usize,
    pub seed: u64,
}

impl Default for QueryBounds {
    fn default() -> Self {
        QueryBounds { j: 3, k: 3, coeff: 3, random: 200, seed: 0x5eed }
    }
}

fn pool(c: &Carrier) -> Vec<Elem> {
    c.elements().unwrap_or_else(|| c.fragment(4))
}

/// All queries with `|J| = |K| = 1` over the element pool, plus
/// `bounds.random` seeded queries with larger index sets. Draws whose
/// premise fails are discarded.
pub fn query_corpus(c: &Carrier, bounds: QueryBounds) -> Vec<ApproxQuery> {
    let elems = pool(c);
    let pairs: Vec<(Elem, Elem)> = elems
        .iter()
        .flat_map(|x| elems.iter().filter(|xp| c.waybelow(xp, x)).map(move |xp| (xp.clone(), x.clone())))
        .collect();
    let mut out = Vec::new();
    for (xp, x) in &pairs {
        for m in 0..=bounds.coeff {
            for n in 0..=bounds.coeff {
                let q = ApproxQuery { x_prime: vec![xp.clone()], x: vec![x.clone()], m: vec![vec![m]], n: vec![vec![n]] };
                if q.validate(c).is_ok() {
                    out.push(q);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut drawn = 0;
    let mut attempts = 0;
    while drawn < bounds.random && attempts < bounds.random * 50 && !pairs.is_empty() {
        attempts += 1;
        let j = rng.gen_range(1..=bounds.j.max(1));
        let k = rng.gen_range(1..=bounds.k.max(1));
        let picked: Vec<&(Elem, Elem)> = (0..j).map(|_| &pairs[rng.gen_range(0..pairs.len())]).collect();
        let mut row = || (0..j).map(|_| rng.gen_range(0..=bounds.coeff)).collect::<Vec<u64>>();
        let m: Vec<Vec<u64>> = (0..k).map(|_| row()).collect();
        let n: Vec<Vec<u64>> = (0..k).map(|_| row()).collect();
        let q = ApproxQuery {
            x_prime: picked.iter().map(|p| p.0.clone()).collect(),
            x: picked.iter().map(|p| p.1.clone()).collect(),
            m,
            n,
        };
        if q.validate(c).is_ok() {
            out.push(q);
            drawn += 1;
        }
    }
    out
}

/// Interpolants found for one query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryWitness {
    pub member: usize,
    pub ys: Vec<Elem>,
}

/// Searches a member and `y_j` with `x'_j ≪ φ(y_j) ≪ x_j` and
/// `Σ m_k(j)y_j ≪ Σ n_k(j)y_j` for every `k`. Finite members are searched
/// exhaustively, so a miss is a failure; infinite ones on growing fragments
/// until `fuel` runs out.
pub fn check_query(f: &ApproxFamily, q: &ApproxQuery, fuel: u64) -> Result<(Verdict, Option<QueryWitness>)> {
    q.validate(&f.target)?;
    let all_finite = f.members.iter().all(|m| m.source.is_finite());
    let budget = Budget::new(if all_finite { u64::MAX } else { fuel });
    let mut completed = 0;
    for level in 1..=MAX_LEVEL {
        match search(f, q, level, &budget) {
            Search::Found(w) => return Ok((Verdict::Holds, Some(w))),
            Search::OutOfFuel => break,
            Search::Exhausted if all_finite => return Ok((Verdict::fails(q.describe()), None)),
            Search::Exhausted => completed = level,
        }
        if budget.exhausted() {
            break;
        }
    }
    Ok((Verdict::Unknown { fuel, level: completed }, None))
}

const MAX_LEVEL: u64 = 256;

enum Search {
    Found(QueryWitness),
    Exhausted,
    OutOfFuel,
}

fn search(f: &ApproxFamily, q: &ApproxQuery, level: u64, budget: &Budget) -> Search {
    for (idx, member) in f.members.iter().enumerate() {
        let src = &member.source;
        let space = src.elements().unwrap_or_else(|| src.fragment(level + max_finite(q)));
        let cands: Vec<Vec<&Elem>> = q
            .x_prime
            .iter()
            .zip(&q.x)
            .map(|(xp, x)| {
                space
                    .iter()
                    .filter(|y| {
                        let fy = member.apply(y);
                        f.target.waybelow(xp, &fy) && f.target.waybelow(&fy, x)
                    })
                    .collect()
            })
            .collect();
        if cands.iter().any(Vec::is_empty) {
            continue;
        }
        let mut choice = vec![0usize; cands.len()];
        'odometer: loop {
            if !budget.spend(1) {
                return Search::OutOfFuel;
            }
            let ys: Vec<Elem> = choice.iter().zip(&cands).map(|(&i, c)| c[i].clone()).collect();
            if q.m.iter().zip(&q.n).all(|(m, n)| src.waybelow(&combination(src, m, &ys), &combination(src, n, &ys))) {
                return Search::Found(QueryWitness { member: idx, ys });
            }
            for pos in 0..choice.len() {
                choice[pos] += 1;
                if choice[pos] < cands[pos].len() {
                    continue 'odometer;
                }
                choice[pos] = 0;
            }
            break;
        }
    }
    Search::Exhausted
}

fn max_finite(q: &ApproxQuery) -> u64 {
    q.x_prime.iter().chain(&q.x).filter_map(|e| e.ext().and_then(ExtNat::finite)).max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproxReport {
    pub bounds: QueryBounds,
    pub queries: usize,
    pub answered: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_query: Option<ApproxQuery>,
}

/// Runs every query of the corpus. Holds when each query found
/// interpolants; fails on the first query that provably has none.
pub fn check_approximates(f: &ApproxFamily, bounds: QueryBounds, fuel: u64) -> Result<ApproxReport> {
    let queries = query_corpus(&f.target, bounds);
    let mut answered = 0;
    let mut unknown = None;
    for q in &queries {
        match check_query(f, q, fuel)? {
            (Verdict::Holds, _) => answered += 1,
            (v @ Verdict::Fails { .. }, _) => {
                return Ok(ApproxReport { bounds, queries: queries.len(), answered, verdict: v, failing_query: Some(q.clone()) });
            }
            (v, _) => unknown = Some(v),
        }
    }
    let verdict = unknown.unwrap_or(Verdict::Holds);
    Ok(ApproxReport { bounds, queries: queries.len(), answered, verdict, failing_query: None })
}

#[cfg(test)]
mod tests {
    use super::super::morphism::{validate_morphism, MapRule};
    use super::*;
    use crate::carrier::NbarSet;
    use std::sync::Arc;

    #[test]
    fn identity_family_approximates() {
        for c in [Carrier::chain(2), crate::carrier::direct_sum(&Carrier::chain(3), &Carrier::chain(1))] {
            let f = ApproxFamily::identity(&c, 0).unwrap();
            let r = check_approximates(&f, QueryBounds { random: 40, ..Default::default() }, 0).unwrap();
            assert!(r.verdict.holds(), "{}", r.verdict.label());
            assert_eq!(r.answered, r.queries);
        }
    }

    #[test]
    fn zero_subsemigroup_does_not_approximate() {
        let c = Carrier::chain(2);
        let inc = validate_morphism(&Carrier::trivial(), &c, MapRule::Table { images: vec![Elem::Idx(0)] }, 0).unwrap();
        let f = ApproxFamily::new(c, vec![inc]).unwrap();
        let r = check_approximates(&f, QueryBounds { random: 0, ..Default::default() }, 0).unwrap();
        assert!(r.verdict.is_fail());
        assert!(r.failing_query.unwrap().x_prime[0] != Elem::Idx(0));
    }

    #[test]
    fn sub_cu_inclusions_approximate_nbar() {
        let members = [1u64, 2, 3]
            .iter()
            .map(|&d| {
                let sub = Carrier::NbarSub(Arc::new(NbarSet::multiples(d).with_inf(true)));
                validate_morphism(&sub, &Carrier::Nbar, MapRule::Inclusion, 2_000).unwrap()
            })
            .collect();
        let f = ApproxFamily::new(Carrier::Nbar, members).unwrap();
        let r = check_approximates(&f, QueryBounds { random: 30, ..Default::default() }, 5_000).unwrap();
        assert!(r.verdict.not_refuted());
        assert_eq!(r.answered, r.queries);
    }

    #[test]
    fn malformed_queries_are_rejected() {
        let c = Carrier::chain(2);
        let f = ApproxFamily::identity(&c, 0).unwrap();
        let q = ApproxQuery { x_prime: vec![Elem::Idx(2)], x: vec![Elem::Idx(1)], m: vec![], n: vec![] };
        assert!(matches!(check_query(&f, &q, 0), Err(Error::MalformedQuery(_))));
    }
}
