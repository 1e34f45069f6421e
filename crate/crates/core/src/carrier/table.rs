//! Finite positively ordered monoids given by explicit tables.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite positively ordered monoid on `{0, ..., n-1}`.
///
/// Element `0` is always the additive identity. A table built through
/// [`FiniteCuTable::new`] is structurally sound (square, indices in range) but
/// may still violate monoid or order laws; [`FiniteCuTable::validate_pom`]
/// reports those.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteCuTable {
    n: usize,
    add: Vec<usize>,
    leq: Vec<bool>,
}

/// The laws a positively ordered monoid table must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Commutativity,
    Associativity,
    Identity,
    Reflexivity,
    Antisymmetry,
    Transitivity,
    LeastZero,
    OrderCompatibility,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::Identity => "identity",
            Law::Reflexivity => "reflexivity",
            Law::Antisymmetry => "antisymmetry",
            Law::Transitivity => "transitivity",
            Law::LeastZero => "least-zero",
            Law::OrderCompatibility => "order-compatibility",
        };
        f.write_str(s)
    }
}

/// A violated law with the lexicographically first witness tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: Law,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<LawViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, law: Law) -> Option<&LawViolation> {
        self.violations.iter().find(|v| v.law == law)
    }
}

impl FiniteCuTable {
    /// Builds a table from row-major `add` and `leq` matrices.
    pub fn new(add: Vec<Vec<usize>>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::Structural("a table needs at least the element 0".into()));
        }
        if leq.len() != n {
            return Err(Error::Structural(format!("add has {n} rows but leq has {}", leq.len())));
        }
        for (i, row) in add.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structural(format!("add row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::Structural(format!("add row {i} contains out-of-range index {bad}")));
            }
        }
        for (i, row) in leq.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structural(format!("leq row {i} has {} entries, expected {n}", row.len())));
            }
        }
        Ok(FiniteCuTable {
            n,
            add: add.into_iter().flatten().collect(),
            leq: leq.into_iter().flatten().collect(),
        })
    }

    /// Builds a table from closures; useful for constructions.
    pub fn from_fns(n: usize, add: impl Fn(usize, usize) -> usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let a = (0..n).map(|i| (0..n).map(|j| add(i, j)).collect()).collect();
        let l = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        Self::new(a, l)
    }

    /// The trivial monoid `{0}`.
    pub fn trivial() -> Self {
        FiniteCuTable { n: 1, add: vec![0], leq: vec![true] }
    }

    /// `C_m = {0, ..., m}` with addition saturating at `m`.
    pub fn saturating_chain(m: usize) -> Self {
        Self::from_fns(m + 1, |a, b| (a + b).min(m), |a, b| a <= b).expect("chain table is well formed")
    }

    /// Componentwise order and addition on `self × other`; `(a, b)` has index
    /// `a * other.len() + b`.
    pub fn direct_sum(&self, other: &FiniteCuTable) -> FiniteCuTable {
        let m = other.n;
        Self::from_fns(
            self.n * m,
            |x, y| self.add(x / m, y / m) * m + other.add(x % m, y % m),
            |x, y| self.leq(x / m, y / m) && other.leq(x % m, y % m),
        )
        .expect("direct sum of well-formed tables is well formed")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn leq_rows(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// `k·a`, with `0·a = 0`.
    pub fn multiple(&self, a: usize, k: u64) -> usize {
        let mut acc = 0;
        let mut seen = 0u64;
        // multiples stabilize after at most n steps once they stop increasing
        while seen < k {
            let next = self.add(acc, a);
            seen += 1;
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }

    /// Least `m ≥ 1` with `(m+1)·a = m·a`; exists in a valid table since
    /// `m·a` is increasing in a finite poset.
    pub fn stabilization_index(&self, a: usize) -> usize {
        let mut acc = a;
        for m in 1..=self.n + 1 {
            let next = self.add(acc, a);
            if next == acc {
                return m;
            }
            acc = next;
        }
        self.n + 1
    }

    /// `∞·a`, the supremum of `(k·a)_k`.
    pub fn infinite_multiple(&self, a: usize) -> usize {
        self.multiple(a, self.n as u64 + 2)
    }

    /// Checks every law; each violated law is listed once with its
    /// lexicographically first witness.
    pub fn validate_pom(&self) -> ValidationReport {
        let n = self.n;
        let mut violations = Vec::new();
        let mut first = |law: Law, it: &mut dyn Iterator<Item = Vec<usize>>| {
            if let Some(w) = it.next() {
                violations.push(LawViolation { law, witness: w });
            }
        };
        let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
        let triples = || pairs().flat_map(move |(a, b)| (0..n).map(move |c| (a, b, c)));

        first(Law::Identity, &mut (0..n).filter(|&a| self.add(0, a) != a || self.add(a, 0) != a).map(|a| vec![a]));
        first(
            Law::Commutativity,
            &mut pairs().filter(|&(a, b)| self.add(a, b) != self.add(b, a)).map(|(a, b)| vec![a, b]),
        );
        first(
            Law::Associativity,
            &mut triples()
                .filter(|&(a, b, c)| self.add(self.add(a, b), c) != self.add(a, self.add(b, c)))
                .map(|(a, b, c)| vec![a, b, c]),
        );
        first(Law::Reflexivity, &mut (0..n).filter(|&a| !self.leq(a, a)).map(|a| vec![a]));
        first(
            Law::Antisymmetry,
            &mut pairs().filter(|&(a, b)| a != b && self.leq(a, b) && self.leq(b, a)).map(|(a, b)| vec![a, b]),
        );
        first(
            Law::Transitivity,
            &mut triples()
                .filter(|&(a, b, c)| self.leq(a, b) && self.leq(b, c) && !self.leq(a, c))
                .map(|(a, b, c)| vec![a, b, c]),
        );
        first(Law::LeastZero, &mut (0..n).filter(|&a| !self.leq(0, a)).map(|a| vec![a]));
        first(
            Law::OrderCompatibility,
            &mut triples()
                .filter(|&(a, b, c)| self.leq(a, b) && !self.leq(self.add(a, c), self.add(b, c)))
                .map(|(a, b, c)| vec![a, b, c]),
        );
        violations.sort_by_key(|v| v.law);
        ValidationReport { violations }
    }

    /// Validates and converts the first violation into an error.
    pub fn validated(self) -> Result<Self> {
        match self.validate_pom().violations.first() {
            None => Ok(self),
            Some(v) => Err(Error::LawViolation(format!("{} at {:?}", v.law, v.witness))),
        }
    }

    /// True if `subset` (as a membership mask) contains 0 and is closed under addition.
    pub fn is_submonoid(&self, subset: &[bool]) -> bool {
        subset[0]
            && (0..self.n).all(|a| !subset[a] || (0..self.n).all(|b| !subset[b] || subset[self.add(a, b)]))
    }

    /// The induced structure on a submonoid, re-indexed in increasing order of
    /// the original indices (so 0 stays 0). Returns the table and the list of
    /// original indices.
    pub fn restrict(&self, members: &[usize]) -> Result<(FiniteCuTable, Vec<usize>)> {
        let mut idx: Vec<usize> = members.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.first() != Some(&0) {
            return Err(Error::NotASubmonoid("subset does not contain 0".into()));
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, &e) in idx.iter().enumerate() {
            pos[e] = i;
        }
        for &a in &idx {
            for &b in &idx {
                if pos[self.add(a, b)] == usize::MAX {
                    return Err(Error::NotASubmonoid(format!("{a}+{b}={} leaves the subset", self.add(a, b))));
                }
            }
        }
        let t = Self::from_fns(idx.len(), |i, j| pos[self.add(idx[i], idx[j])], |i, j| self.leq(idx[i], idx[j]))?;
        Ok((t, idx))
    }

    /// Applies a relabeling `perm` (old index → new index) with `perm[0] = 0`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteCuTable {
        let mut inv = vec![0; self.n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        Self::from_fns(self.n, |i, j| perm[self.add(inv[i], inv[j])], |i, j| self.leq(inv[i], inv[j]))
            .expect("relabeling keeps the table well formed")
    }

    /// True if the order is total.
    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Searches for an isomorphism onto `other` (bijection preserving 0,
    /// addition, and order in both directions). Backtracking; fine for the
    /// desk-scale tables this crate handles.
    pub fn isomorphism_to(&self, other: &FiniteCuTable) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let n = self.n;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        fn consistent(s: &FiniteCuTable, o: &FiniteCuTable, map: &[usize], upto: usize) -> bool {
            (0..=upto).all(|a| {
                (0..=upto).all(|b| {
                    let (fa, fb) = (map[a], map[b]);
                    if s.leq(a, b) != o.leq(fa, fb) {
                        return false;
                    }
                    let c = s.add(a, b);
                    c > upto || map[c] == o.add(fa, fb)
                })
            })
        }
        fn go(s: &FiniteCuTable, o: &FiniteCuTable, map: &mut Vec<usize>, used: &mut Vec<bool>, k: usize) -> bool {
            if k == s.n {
                return (0..s.n).all(|a| (0..s.n).all(|b| map[s.add(a, b)] == o.add(map[a], map[b])));
            }
            for cand in 0..s.n {
                if used[cand] {
                    continue;
                }
                map[k] = cand;
                used[cand] = true;
                if consistent(s, o, map, k) && go(s, o, map, used, k + 1) {
                    return true;
                }
                used[cand] = false;
            }
            map[k] = usize::MAX;
            false
        }
        if !consistent(self, other, &map, 0) {
            return None;
        }
        go(self, other, &mut map, &mut used, 1).then_some(map)
    }
}

impl fmt::Debug for FiniteCuTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCuTable")
            .field("n", &self.n)
            .field("add", &self.add_rows())
            .field("leq", &self.leq_rows())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_three_is_valid() {
        let c3 = FiniteCuTable::saturating_chain(3);
        assert_eq!(c3.len(), 4);
        assert!(c3.validate_pom().is_valid());
        assert_eq!(c3.add(2, 3), 3);
        assert_eq!(c3.infinite_multiple(1), 3);
        assert_eq!(c3.stabilization_index(1), 3);
        assert_eq!(c3.stabilization_index(2), 2);
    }

    #[test]
    fn antisymmetry_violation_is_reported() {
        let t = FiniteCuTable::new(vec![vec![0, 1], vec![1, 1]], vec![vec![true, true], vec![true, true]]).unwrap();
        let r = t.validate_pom();
        assert_eq!(r.violation(Law::Antisymmetry).unwrap().witness, vec![0, 1]);
    }

    #[test]
    fn commutativity_violation_is_reported() {
        let t = FiniteCuTable::new(
            vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 2]],
            vec![vec![true; 3], vec![false, true, true], vec![false, false, true]],
        )
        .unwrap();
        let r = t.validate_pom();
        assert_eq!(r.violation(Law::Commutativity).unwrap().witness, vec![1, 2]);
    }

    #[test]
    fn structural_errors_are_distinct() {
        assert!(matches!(
            FiniteCuTable::new(vec![vec![0, 1], vec![1]], vec![vec![true; 2]; 2]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            FiniteCuTable::new(vec![vec![0, 5], vec![1, 1]], vec![vec![true; 2]; 2]),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn direct_sum_of_two_bits() {
        let c1 = FiniteCuTable::saturating_chain(1);
        let s = c1.direct_sum(&c1);
        assert_eq!(s.len(), 4);
        assert!(s.validate_pom().is_valid());
        assert!((0..4).all(|x| s.leq(x, 3)));
    }

    #[test]
    fn restrict_and_isomorphism() {
        let c4 = FiniteCuTable::saturating_chain(4);
        let (evens, idx) = c4.restrict(&[0, 2, 4]).unwrap();
        assert_eq!(idx, vec![0, 2, 4]);
        assert!(evens.isomorphism_to(&FiniteCuTable::saturating_chain(2)).is_some());
        assert!(c4.restrict(&[0, 1]).is_err());
        let perm = [0, 2, 1];
        let c2 = FiniteCuTable::saturating_chain(2);
        let r = c2.relabel(&perm);
        assert_eq!(c2.isomorphism_to(&r), Some(vec![0, 2, 1]));
    }
}
