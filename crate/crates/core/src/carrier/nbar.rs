//! The extended naturals `{0, 1, 2, ..., ∞}` and finitely described subsets of them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A natural number or infinity.
///
/// The derived order puts every `Fin(n)` below `Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }

    /// Overflow goes to `Inf`.
    pub fn add(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_add(b).map_or(ExtNat::Inf, ExtNat::Fin),
            _ => ExtNat::Inf,
        }
    }

    pub fn scale(self, k: u64) -> ExtNat {
        match self {
            _ if k == 0 => ExtNat::ZERO,
            ExtNat::Fin(a) => a.checked_mul(k).map_or(ExtNat::Inf, ExtNat::Fin),
            ExtNat::Inf => ExtNat::Inf,
        }
    }

    /// `a ≪ b` in N̄: `a` is finite and `a ≤ b`.
    pub fn way_below(self, other: ExtNat) -> bool {
        self.is_finite() && self <= other
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" | "oo" => Ok(ExtNat::Inf),
            t => t
                .parse::<u64>()
                .map(ExtNat::Fin)
                .map_err(|_| Error::InvalidElement(s.to_string())),
        }
    }
}

/// An eventually periodic subset of ℕ, optionally together with ∞.
///
/// Membership of `n < threshold` is read from `head`; for `n ≥ threshold` it
/// is `tail[(n - threshold) % period]`. Values are kept in normal form, so
/// structural equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NbarSet {
    head: Vec<bool>,
    tail: Vec<bool>,
    inf: bool,
}

impl NbarSet {
    pub fn from_parts(head: Vec<bool>, tail: Vec<bool>, inf: bool) -> Self {
        assert!(!tail.is_empty(), "period must be positive");
        let mut s = NbarSet { head, tail, inf };
        s.normalize();
        s
    }

    pub fn empty() -> Self {
        Self::from_parts(vec![], vec![false], false)
    }

    /// `{0}`.
    pub fn zero() -> Self {
        Self::from_parts(vec![true], vec![false], false)
    }

    /// ℕ without ∞.
    pub fn naturals() -> Self {
        Self::from_parts(vec![], vec![true], false)
    }

    /// All of N̄.
    pub fn everything() -> Self {
        Self::from_parts(vec![], vec![true], true)
    }

    /// `{0, d, 2d, ...}`; `d = 0` gives `{0}`.
    pub fn multiples(d: u64) -> Self {
        if d == 0 {
            return Self::zero();
        }
        let mut tail = vec![false; d as usize];
        tail[0] = true;
        Self::from_parts(vec![], tail, false)
    }

    /// `{n : n ≥ from}` (finite part only).
    pub fn at_least(from: u64) -> Self {
        Self::from_parts(vec![false; from as usize], vec![true], false)
    }

    pub fn from_elements<I: IntoIterator<Item = ExtNat>>(elems: I) -> Self {
        let mut finite = Vec::new();
        let mut inf = false;
        for e in elems {
            match e {
                ExtNat::Fin(n) => finite.push(n as usize),
                ExtNat::Inf => inf = true,
            }
        }
        let len = finite.iter().max().map_or(0, |m| m + 1);
        let mut head = vec![false; len];
        for n in finite {
            head[n] = true;
        }
        Self::from_parts(head, vec![false], inf)
    }

    pub fn with_inf(mut self, inf: bool) -> Self {
        self.inf = inf;
        self
    }

    pub fn threshold(&self) -> u64 {
        self.head.len() as u64
    }

    pub fn period(&self) -> u64 {
        self.tail.len() as u64
    }

    pub fn has_inf(&self) -> bool {
        self.inf
    }

    pub fn contains_nat(&self, n: u64) -> bool {
        let t = self.head.len() as u64;
        if n < t {
            self.head[n as usize]
        } else {
            self.tail[((n - t) % self.period()) as usize]
        }
    }

    pub fn contains(&self, x: ExtNat) -> bool {
        match x {
            ExtNat::Fin(n) => self.contains_nat(n),
            ExtNat::Inf => self.inf,
        }
    }

    /// True when the finite part is an infinite set.
    pub fn finite_part_unbounded(&self) -> bool {
        self.tail.iter().any(|&b| b)
    }

    pub fn is_empty(&self) -> bool {
        !self.inf && !self.finite_part_unbounded() && !self.head.iter().any(|&b| b)
    }

    /// Finite members `≤ bound`, ascending.
    pub fn finite_members_upto(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&n| self.contains_nat(n)).collect()
    }

    /// Members `≤ bound` plus ∞ when present.
    pub fn members_upto(&self, bound: u64) -> Vec<ExtNat> {
        let mut v: Vec<ExtNat> = self.finite_members_upto(bound).into_iter().map(ExtNat::Fin).collect();
        if self.inf {
            v.push(ExtNat::Inf);
        }
        v
    }

    /// Smallest finite member `≥ from`, if any.
    pub fn next_member(&self, from: u64) -> Option<u64> {
        let horizon = from.max(self.threshold()) + self.period();
        (from..=horizon).find(|&n| self.contains_nat(n))
    }

    /// Bound past which the finite part is purely periodic; every question
    /// about membership is decided by members below `horizon()`.
    pub fn horizon(&self) -> u64 {
        self.threshold() + self.period()
    }

    fn aligned(&self, other: &NbarSet) -> (usize, usize) {
        let t = self.head.len().max(other.head.len());
        let p = lcm(self.tail.len() as u64, other.tail.len() as u64) as usize;
        (t, p)
    }

    fn combine(&self, other: &NbarSet, op: impl Fn(bool, bool) -> bool) -> NbarSet {
        let (t, p) = self.aligned(other);
        let head = (0..t as u64).map(|n| op(self.contains_nat(n), other.contains_nat(n))).collect();
        let tail = (t as u64..(t + p) as u64)
            .map(|n| op(self.contains_nat(n), other.contains_nat(n)))
            .collect();
        NbarSet::from_parts(head, tail, op(self.inf, other.inf))
    }

    pub fn union(&self, other: &NbarSet) -> NbarSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &NbarSet) -> NbarSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn is_subset(&self, other: &NbarSet) -> bool {
        self.intersection(other) == *self
    }

    /// The set without ∞.
    pub fn finite_part(&self) -> NbarSet {
        self.clone().with_inf(false)
    }

    fn normalize(&mut self) {
        // shortest period
        let p = self.tail.len();
        for d in 1..=p {
            if p.is_multiple_of(d) && (0..p).all(|i| self.tail[i] == self.tail[i % d]) {
                self.tail.truncate(d);
                break;
            }
        }
        // shortest head
        while let Some(&last) = self.head.last() {
            let p = self.tail.len();
            if last == self.tail[p - 1] {
                self.head.pop();
                self.tail.rotate_right(1);
            } else {
                break;
            }
        }
    }
}

impl fmt::Display for NbarSet {
    /// Lists every finite member below the threshold plus two periods of
    /// the tail, then `…` when the finite part is unbounded.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unbounded = self.finite_part_unbounded();
        let upto = if unbounded { self.threshold() + 2 * self.period() } else { self.threshold() };
        let mut parts: Vec<String> = (0..upto).filter(|&n| self.contains_nat(n)).map(|n| n.to_string()).collect();
        if unbounded {
            parts.push("…".into());
        }
        if self.inf {
            parts.push("inf".into());
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Additive closure of `seed ∪ {0}` inside N̄.
///
/// The finite part of the result is `d·M` for the numerical monoid `M`
/// generated by `seed/d`, where `d` is the gcd of the finite seed. Membership
/// is saturated until a run of `min_gen` consecutive multiples of `d` is
/// found, after which every further multiple is a member. Returns `None` if
/// that run is not reached within `fuel` candidate values.
pub fn generated_submonoid(seed: &NbarSet, fuel: u64) -> Option<NbarSet> {
    let inf = seed.has_inf();
    let scan = seed.horizon() + seed.period();
    let gens: Vec<u64> = (1..scan).filter(|&n| seed.contains_nat(n)).collect();
    if gens.is_empty() {
        return Some(NbarSet::zero().with_inf(inf));
    }
    let d = gens.iter().fold(0, |acc, &g| gcd(acc, g));
    let min_gen = gens[0];
    let mut member: Vec<bool> = vec![true];
    let mut run = 0u64;
    let mut n = 0u64;
    while n < fuel {
        n += 1;
        let is_member = n.is_multiple_of(d)
            && (seed.contains_nat(n) || (1..n).any(|g| seed.contains_nat(g) && member[(n - g) as usize]));
        member.push(is_member);
        if n.is_multiple_of(d) {
            if is_member {
                run += 1;
                if run >= min_gen / d && n >= scan {
                    let threshold = (n + 1) as usize;
                    let mut tail = vec![false; d as usize];
                    tail[((d - (threshold as u64 % d)) % d) as usize] = true;
                    return Some(NbarSet::from_parts(member, tail, inf));
                }
            } else {
                run = 0;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_arithmetic() {
        assert_eq!(ExtNat::Fin(2).add(ExtNat::Fin(3)), ExtNat::Fin(5));
        assert_eq!(ExtNat::Fin(2).add(ExtNat::Inf), ExtNat::Inf);
        assert!(ExtNat::Fin(3).way_below(ExtNat::Fin(5)));
        assert!(!ExtNat::Inf.way_below(ExtNat::Inf));
        assert!(ExtNat::ZERO.way_below(ExtNat::ZERO));
        assert_eq!("inf".parse::<ExtNat>().unwrap(), ExtNat::Inf);
        assert!("x".parse::<ExtNat>().is_err());
    }

    #[test]
    fn normal_form_is_canonical() {
        let a = NbarSet::from_parts(vec![true, false, true, false], vec![true, false, true, false], false);
        assert_eq!(a, NbarSet::multiples(2));
        assert_eq!(a.threshold(), 0);
        assert_eq!(a.period(), 2);
    }

    #[test]
    fn numerical_monoid_two_three() {
        let seed = NbarSet::from_elements([ExtNat::Fin(2), ExtNat::Fin(3)]);
        let m = generated_submonoid(&seed, 1000).unwrap();
        let expected = NbarSet::from_parts(vec![true, false], vec![true], false);
        assert_eq!(m, expected);
        assert!(!m.has_inf());
    }

    #[test]
    fn numerical_monoid_with_gcd() {
        let seed = NbarSet::from_elements([ExtNat::Fin(6), ExtNat::Fin(9)]);
        let m = generated_submonoid(&seed, 1000).unwrap();
        // 3·⟨2,3⟩ = {0,6,9,12,...}
        for n in 0..60 {
            let want = n == 0 || (n % 3 == 0 && n >= 6);
            assert_eq!(m.contains_nat(n), want, "n={n}");
        }
    }

    #[test]
    fn generated_from_periodic_seed() {
        // odd numbers ≥ 5: generators 5, 7, 9, ...
        let seed = NbarSet::from_parts(vec![false; 5], vec![true, false], false);
        let m = generated_submonoid(&seed, 1000).unwrap();
        for n in 0..80u64 {
            let brute = brute_member(n, &|g| g >= 5 && g % 2 == 1);
            assert_eq!(m.contains_nat(n), brute, "n={n}");
        }
    }

    fn brute_member(n: u64, gen: &dyn Fn(u64) -> bool) -> bool {
        let mut reach = vec![false; n as usize + 1];
        reach[0] = true;
        for i in 1..=n as usize {
            reach[i] = (1..=i).any(|g| gen(g as u64) && reach[i - g]);
        }
        reach[n as usize]
    }

    #[test]
    fn union_and_intersection() {
        let evens = NbarSet::multiples(2).with_inf(true);
        let threes = NbarSet::multiples(3).with_inf(true);
        assert_eq!(evens.intersection(&threes), NbarSet::multiples(6).with_inf(true));
        let u = evens.union(&threes);
        assert!(u.contains_nat(9) && u.contains_nat(4) && !u.contains_nat(5));
        assert!(NbarSet::multiples(6).is_subset(&evens));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(NbarSet::zero().with_inf(true).to_string(), "{0,inf}");
        assert_eq!(NbarSet::multiples(2).to_string(), "{0,2,…}");
    }
}
