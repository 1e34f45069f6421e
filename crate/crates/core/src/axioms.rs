//! Deciding O5, O6, O7, weak cancellation, simplicity, Riesz interpolation,
//! almost divisibility and softness.
//!
//! Each of O5, O6, O7 and weak cancellation has a direct form, quantifying
//! over elements, and a basis form, quantifying over a basis with
//! approximants. On a finite carrier both are exact. On a catalog carrier
//! the quantifiers range over fragments of increasing level and the verdict
//! is at best "holds up to fuel".
//!
//! Witness searches on catalog carriers range over the same fragment as the
//! instance. For N̄, direct sums of N̄ and tables, and monotone maps this
//! loses nothing: any witness can be clipped into the fragment (coordinates
//! above the level raised to ∞ in direct form, lowered to the level in basis
//! form) without breaking its conditions. On sub-semigroups of N̄ that
//! argument is unavailable, so a failed search there yields no verdict.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::carrier::{Carrier, Elem, ExtNat, FiniteCuTable};
use crate::error::{Error, Result};
use crate::verdict::{search_levels, Budget, Level, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    O5,
    O6,
    O7,
    #[serde(rename = "wc")]
    WeakCancellation,
    Simple,
    Riesz,
    #[serde(rename = "div")]
    AlmostDivisible,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::O5,
        Axiom::O6,
        Axiom::O7,
        Axiom::WeakCancellation,
        Axiom::Simple,
        Axiom::Riesz,
        Axiom::AlmostDivisible,
    ];

    /// Axioms that have a separate basis form.
    pub fn has_basis_form(self) -> bool {
        matches!(self, Axiom::O5 | Axiom::O6 | Axiom::O7 | Axiom::WeakCancellation)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Axiom::O5 => "o5",
            Axiom::O6 => "o6",
            Axiom::O7 => "o7",
            Axiom::WeakCancellation => "wc",
            Axiom::Simple => "simple",
            Axiom::Riesz => "riesz",
            Axiom::AlmostDivisible => "div",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown axiom `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Direct,
    Basis,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Mode::Direct),
            "basis" => Ok(Mode::Basis),
            _ => Err(Error::InvalidParams(format!("unknown mode `{s}`"))),
        }
    }
}

/// A basis of a carrier: an explicit finite list, or the carrier's own
/// basis enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisRepr {
    Explicit(Vec<Elem>),
    Enumerated,
}

impl BasisRepr {
    /// The default basis: every element of a table, the enumeration otherwise.
    pub fn default_for(carrier: &Carrier) -> BasisRepr {
        match carrier.elements() {
            Some(all) if carrier.table().is_some() => BasisRepr::Explicit(all),
            _ => BasisRepr::Enumerated,
        }
    }

    /// Checks the basis property on a finite carrier: every `x' ≪ x` has some
    /// `b` in the list with `x' ≪ b ≪ x`.
    pub fn is_basis_of(&self, carrier: &Carrier) -> bool {
        match (self, carrier.elements()) {
            (BasisRepr::Explicit(b), Some(all)) => all.iter().all(|x| {
                all.iter()
                    .filter(|xp| carrier.waybelow(xp, x))
                    .all(|xp| b.iter().any(|y| carrier.waybelow(xp, y) && carrier.waybelow(y, x)))
            }),
            (BasisRepr::Enumerated, _) => true,
            (BasisRepr::Explicit(_), None) => false,
        }
    }

    fn fragment(&self, carrier: &Carrier, level: u64) -> Vec<Elem> {
        match self {
            BasisRepr::Explicit(b) => b.clone(),
            BasisRepr::Enumerated => carrier.basis_fragment(level),
        }
    }
}

/// Every subset of a table that is a basis, as index lists in order of
/// their bitmask.
pub fn enumerate_bases(carrier: &Carrier) -> Result<Vec<BasisRepr>> {
    let all = match (carrier.table(), carrier.elements()) {
        (Some(t), Some(all)) if t.len() <= 6 => all,
        (Some(t), _) => return Err(Error::InvalidParams(format!("basis enumeration is capped at 6 elements, got {}", t.len()))),
        _ => return Err(Error::Unsupported("basis enumeration".into(), carrier.describe())),
    };
    let n = all.len();
    Ok((0u32..(1 << n))
        .map(|mask| BasisRepr::Explicit((0..n).filter(|i| mask & (1 << i) != 0).map(|i| all[i].clone()).collect()))
        .filter(|b| b.is_basis_of(carrier))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub mode: Mode,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Checks one axiom. Basis mode needs a basis for O5, O6, O7 and weak
/// cancellation; the other axioms only have a direct form and ignore it.
pub fn check_axiom(
    carrier: &Carrier,
    axiom: Axiom,
    mode: Mode,
    basis: Option<&BasisRepr>,
    fuel: u64,
) -> Result<AxiomVerdict> {
    if fuel == 0 && !carrier.is_finite() {
        return Err(Error::ZeroBound("fuel".into()));
    }
    let basis = match (mode, basis) {
        (Mode::Basis, None) if axiom.has_basis_form() => return Err(Error::MissingBasis),
        (Mode::Basis, Some(b)) => Some(b),
        _ => None,
    };
    let finite = carrier.table().is_some();
    let complete = search_is_complete(carrier);
    let universe = |level: u64| -> Vec<Elem> {
        match basis {
            Some(b) => b.fragment(carrier, level),
            None => carrier.fragment(level),
        }
    };
    let verdict = search_levels(finite, fuel, |level, budget| {
        let u = universe(level);
        let ctx = Ctx { c: carrier, u: &u, budget, complete, level };
        match (axiom, basis.is_some()) {
            (Axiom::O5, false) => ctx.o5_direct(),
            (Axiom::O5, true) => ctx.o5_basis(),
            (Axiom::O6, false) => ctx.o6_direct(),
            (Axiom::O6, true) => ctx.o6_basis(),
            (Axiom::O7, false) => ctx.o7_direct(),
            (Axiom::O7, true) => ctx.o7_basis(),
            (Axiom::WeakCancellation, false) => ctx.wc_direct(),
            (Axiom::WeakCancellation, true) => ctx.wc_basis(),
            (Axiom::Simple, _) => ctx.simple(),
            (Axiom::Riesz, _) => ctx.riesz(),
            (Axiom::AlmostDivisible, _) => ctx.almost_divisible(),
        }
    });
    let mode = if axiom.has_basis_form() { mode } else { Mode::Direct };
    Ok(AxiomVerdict { axiom, mode, verdict })
}

pub fn check_o5(carrier: &Carrier, mode: Mode, basis: Option<&BasisRepr>, fuel: u64) -> Result<AxiomVerdict> {
    check_axiom(carrier, Axiom::O5, mode, basis, fuel)
}

pub fn check_o6(carrier: &Carrier, mode: Mode, basis: Option<&BasisRepr>, fuel: u64) -> Result<AxiomVerdict> {
    check_axiom(carrier, Axiom::O6, mode, basis, fuel)
}

pub fn check_o7(carrier: &Carrier, mode: Mode, basis: Option<&BasisRepr>, fuel: u64) -> Result<AxiomVerdict> {
    check_axiom(carrier, Axiom::O7, mode, basis, fuel)
}

pub fn check_weak_cancellation(
    carrier: &Carrier,
    mode: Mode,
    basis: Option<&BasisRepr>,
    fuel: u64,
) -> Result<AxiomVerdict> {
    check_axiom(carrier, Axiom::WeakCancellation, mode, basis, fuel)
}

pub fn check_simple(carrier: &Carrier, fuel: u64) -> Result<AxiomVerdict> {
    check_axiom(carrier, Axiom::Simple, Mode::Direct, None, fuel)
}

pub fn check_riesz_interpolation(carrier: &Carrier, fuel: u64) -> Result<AxiomVerdict> {
    check_axiom(carrier, Axiom::Riesz, Mode::Direct, None, fuel)
}

pub fn check_almost_divisible(carrier: &Carrier, fuel: u64) -> Result<AxiomVerdict> {
    check_axiom(carrier, Axiom::AlmostDivisible, Mode::Direct, None, fuel)
}

fn search_is_complete(c: &Carrier) -> bool {
    match c {
        Carrier::NbarSub(_) => false,
        Carrier::Sum(cs) => cs.iter().all(search_is_complete),
        _ => true,
    }
}

struct Ctx<'a, 'b> {
    c: &'a Carrier,
    u: &'a [Elem],
    budget: &'b Budget,
    complete: bool,
    level: u64,
}

macro_rules! tick {
    ($ctx:expr) => {
        if !$ctx.budget.spend(1) {
            return Level::OutOfFuel;
        }
    };
}

fn named(pairs: &[(&str, &Elem)]) -> Witness {
    pairs.iter().fold(Witness::new(), |w, (n, e)| w.with(*n, (*e).clone()))
}

impl Ctx<'_, '_> {
    fn wb(&self, a: &Elem, b: &Elem) -> bool {
        self.c.waybelow(a, b)
    }

    fn le(&self, a: &Elem, b: &Elem) -> bool {
        self.c.leq(a, b)
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.c.add(a, b)
    }

    /// A failed existential search is a counterexample only when the search
    /// space was complete.
    fn missing(&self, w: Witness) -> Option<Level> {
        self.complete.then_some(Level::Failed(w))
    }

    fn o5_direct(self) -> Level {
        let u = self.u;
        for z in u {
            for x in u {
                for y in u {
                    if !self.le(&self.add(x, y), z) {
                        continue;
                    }
                    for xp in u.iter().filter(|xp| self.wb(xp, x)) {
                        for yp in u.iter().filter(|yp| self.wb(yp, y)) {
                            tick!(self);
                            let ok = u.iter().any(|c| {
                                self.le(&self.add(xp, c), z) && self.le(z, &self.add(x, c)) && self.wb(yp, c)
                            });
                            if !ok {
                                let w = named(&[("x'", xp), ("x", x), ("y'", yp), ("y", y), ("z", z)]);
                                if let Some(l) = self.missing(w) {
                                    return l;
                                }
                            }
                        }
                    }
                }
            }
        }
        Level::Done
    }

    fn o5_basis(self) -> Level {
        let u = self.u;
        for z in u {
            for zp in u.iter().filter(|zp| self.wb(zp, z)) {
                for x in u {
                    for y in u {
                        if !self.wb(&self.add(x, y), zp) {
                            continue;
                        }
                        for xp in u.iter().filter(|xp| self.wb(xp, x)) {
                            for yp in u.iter().filter(|yp| self.wb(yp, y)) {
                                tick!(self);
                                let ok = u.iter().any(|c| {
                                    self.wb(&self.add(xp, c), z) && self.wb(zp, &self.add(x, c)) && self.wb(yp, c)
                                });
                                if !ok {
                                    let w = named(&[("x'", xp), ("x", x), ("y'", yp), ("y", y), ("z'", zp), ("z", z)]);
                                    if let Some(l) = self.missing(w) {
                                        return l;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Level::Done
    }

    fn o6_direct(self) -> Level {
        let u = self.u;
        for x in u {
            for y in u {
                for z in u {
                    if !self.le(x, &self.add(y, z)) {
                        continue;
                    }
                    let vs: Vec<&Elem> = u.iter().filter(|v| self.le(v, x) && self.le(v, y)).collect();
                    let ws: Vec<&Elem> = u.iter().filter(|w| self.le(w, x) && self.le(w, z)).collect();
                    for xp in u.iter().filter(|xp| self.wb(xp, x)) {
                        tick!(self);
                        let ok = vs.iter().any(|v| ws.iter().any(|w| self.le(xp, &self.add(v, w))));
                        if !ok {
                            if let Some(l) = self.missing(named(&[("x'", xp), ("x", x), ("y", y), ("z", z)])) {
                                return l;
                            }
                        }
                    }
                }
            }
        }
        Level::Done
    }

    fn o6_basis(self) -> Level {
        let u = self.u;
        for y in u {
            for yp in u.iter().filter(|yp| self.wb(yp, y)) {
                for z in u {
                    for zp in u.iter().filter(|zp| self.wb(zp, z)) {
                        let s = self.add(yp, zp);
                        for x in u.iter().filter(|x| self.wb(x, &s)) {
                            let vs: Vec<&Elem> = u.iter().filter(|v| self.wb(v, x) && self.wb(v, y)).collect();
                            let ws: Vec<&Elem> = u.iter().filter(|w| self.wb(w, x) && self.wb(w, z)).collect();
                            for xp in u.iter().filter(|xp| self.wb(xp, x)) {
                                tick!(self);
                                let ok = vs.iter().any(|v| ws.iter().any(|w| self.wb(xp, &self.add(v, w))));
                                if !ok {
                                    let w = named(&[("x'", xp), ("x", x), ("y'", yp), ("y", y), ("z'", zp), ("z", z)]);
                                    if let Some(l) = self.missing(w) {
                                        return l;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Level::Done
    }

    fn o7_direct(self) -> Level {
        let u = self.u;
        for w in u {
            let below: Vec<&Elem> = u.iter().filter(|x| self.le(x, w)).collect();
            for &x1 in &below {
                for &x2 in &below {
                    let s = self.add(x1, x2);
                    for x1p in u.iter().filter(|p| self.wb(p, x1)) {
                        for x2p in u.iter().filter(|p| self.wb(p, x2)) {
                            tick!(self);
                            let ok = u.iter().any(|x| {
                                self.wb(x1p, x) && self.wb(x2p, x) && self.le(x, w) && self.le(x, &s)
                            });
                            if !ok {
                                let wit = named(&[("x1'", x1p), ("x1", x1), ("x2'", x2p), ("x2", x2), ("w", w)]);
                                if let Some(l) = self.missing(wit) {
                                    return l;
                                }
                            }
                        }
                    }
                }
            }
        }
        Level::Done
    }

    fn o7_basis(self) -> Level {
        let u = self.u;
        for w in u {
            for wp in u.iter().filter(|wp| self.wb(wp, w)) {
                let below: Vec<&Elem> = u.iter().filter(|x| self.wb(x, wp)).collect();
                for &x1 in &below {
                    for &x2 in &below {
                        let s = self.add(x1, x2);
                        for x1p in u.iter().filter(|p| self.wb(p, x1)) {
                            for x2p in u.iter().filter(|p| self.wb(p, x2)) {
                                tick!(self);
                                let ok = u.iter().any(|x| {
                                    self.wb(x1p, x) && self.wb(x2p, x) && self.wb(x, w) && self.wb(x, &s)
                                });
                                if !ok {
                                    let wit = named(&[
                                        ("x1'", x1p),
                                        ("x1", x1),
                                        ("x2'", x2p),
                                        ("x2", x2),
                                        ("w'", wp),
                                        ("w", w),
                                    ]);
                                    if let Some(l) = self.missing(wit) {
                                        return l;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Level::Done
    }

    fn wc_direct(self) -> Level {
        let u = self.u;
        for x in u {
            for y in u {
                if self.wb(x, y) {
                    continue;
                }
                for z in u {
                    tick!(self);
                    if self.wb(&self.add(x, z), &self.add(y, z)) {
                        return Level::Failed(named(&[("x", x), ("y", y), ("z", z)]));
                    }
                }
            }
        }
        Level::Done
    }

    fn wc_basis(self) -> Level {
        let u = self.u;
        for x in u {
            for y in u {
                for z in u {
                    let xz = self.add(x, z);
                    for yp in u.iter().filter(|yp| self.wb(yp, y)) {
                        for zp in u.iter().filter(|zp| self.wb(zp, z)) {
                            if !self.wb(&xz, &self.add(yp, zp)) {
                                continue;
                            }
                            for xp in u.iter().filter(|xp| self.wb(xp, x)) {
                                tick!(self);
                                if !self.wb(xp, y) {
                                    let w = named(&[("x'", xp), ("x", x), ("y'", yp), ("y", y), ("z'", zp), ("z", z)]);
                                    return Level::Failed(w);
                                }
                            }
                        }
                    }
                }
            }
        }
        Level::Done
    }

    fn simple(self) -> Level {
        let u = self.u;
        let zero = self.c.zero();
        for y in u.iter().filter(|y| **y != zero) {
            let inf_y = self.c.infinite_multiple(y);
            for x in u {
                tick!(self);
                if !self.le(x, &inf_y) {
                    return Level::Failed(named(&[("x", x), ("y", y)]));
                }
            }
        }
        Level::Done
    }

    fn riesz(self) -> Level {
        let u = self.u;
        for x0 in u {
            for x1 in u {
                for y0 in u.iter().filter(|y| self.le(x0, y) && self.le(x1, y)) {
                    for y1 in u.iter().filter(|y| self.le(x0, y) && self.le(x1, y)) {
                        tick!(self);
                        let ok = u.iter().any(|z| {
                            self.le(x0, z) && self.le(x1, z) && self.le(z, y0) && self.le(z, y1)
                        });
                        if !ok {
                            let w = named(&[("x0", x0), ("x1", x1), ("y0", y0), ("y1", y1)]);
                            if let Some(l) = self.missing(w) {
                                return l;
                            }
                        }
                    }
                }
            }
        }
        Level::Done
    }

    /// `n` runs to the carrier size on tables, where multiples have
    /// stabilized, and to the level otherwise.
    fn almost_divisible(self) -> Level {
        let u = self.u;
        let max_n = match self.c.table() {
            Some(t) => t.len() as u64,
            None => self.level,
        };
        for x in u {
            for xp in u.iter().filter(|xp| self.wb(xp, x)) {
                for n in 1..=max_n {
                    tick!(self);
                    let ok = u.iter().any(|z| {
                        self.wb(&self.c.multiple(z, n), x) && self.wb(xp, &self.c.multiple(z, n + 1))
                    });
                    if !ok {
                        let w = named(&[("x'", xp), ("x", x)]).with("n", Elem::nat(n));
                        if let Some(l) = self.missing(w) {
                            return l;
                        }
                    }
                }
            }
        }
        Level::Done
    }
}

/// Replays a failing witness: the premises must hold and the conclusion
/// must fail, with existential searches over all elements (tables) or over
/// the fragment at the witness's own level (catalog carriers).
pub fn replay(carrier: &Carrier, axiom: Axiom, mode: Mode, witness: &Witness) -> Result<bool> {
    let g = |n: &str| -> Result<&Elem> {
        witness.get(n).ok_or_else(|| Error::MalformedQuery(format!("witness lacks `{n}`")))
    };
    let members = || witness.0.iter().filter(|(n, _)| n != "n").map(|(_, e)| e);
    for e in members() {
        carrier.ensure(e)?;
    }
    let level = members().flat_map(finite_coords).max().unwrap_or(0).max(1);
    let space = match (mode, carrier.table()) {
        (_, Some(_)) => carrier.elements().expect("finite"),
        (Mode::Direct, None) => carrier.fragment(level),
        (Mode::Basis, None) => carrier.basis_fragment(level),
    };
    let c = carrier;
    let (wb, le) = (|a: &Elem, b: &Elem| c.waybelow(a, b), |a: &Elem, b: &Elem| c.leq(a, b));
    let add = |a: &Elem, b: &Elem| c.add(a, b);
    let basis = mode == Mode::Basis && axiom.has_basis_form();
    Ok(match (axiom, basis) {
        (Axiom::O5, false) => {
            let (xp, x, yp, y, z) = (g("x'")?, g("x")?, g("y'")?, g("y")?, g("z")?);
            le(&add(x, y), z)
                && wb(xp, x)
                && wb(yp, y)
                && !space.iter().any(|cc| le(&add(xp, cc), z) && le(z, &add(x, cc)) && wb(yp, cc))
        }
        (Axiom::O5, true) => {
            let (xp, x, yp, y, zp, z) = (g("x'")?, g("x")?, g("y'")?, g("y")?, g("z'")?, g("z")?);
            wb(&add(x, y), zp)
                && wb(xp, x)
                && wb(yp, y)
                && wb(zp, z)
                && !space.iter().any(|cc| wb(&add(xp, cc), z) && wb(zp, &add(x, cc)) && wb(yp, cc))
        }
        (Axiom::O6, false) => {
            let (xp, x, y, z) = (g("x'")?, g("x")?, g("y")?, g("z")?);
            wb(xp, x)
                && le(x, &add(y, z))
                && !space.iter().any(|v| {
                    le(v, x) && le(v, y) && space.iter().any(|w| le(w, x) && le(w, z) && le(xp, &add(v, w)))
                })
        }
        (Axiom::O6, true) => {
            let (xp, x, yp, y, zp, z) = (g("x'")?, g("x")?, g("y'")?, g("y")?, g("z'")?, g("z")?);
            wb(x, &add(yp, zp))
                && wb(xp, x)
                && wb(yp, y)
                && wb(zp, z)
                && !space.iter().any(|v| {
                    wb(v, x) && wb(v, y) && space.iter().any(|w| wb(w, x) && wb(w, z) && wb(xp, &add(v, w)))
                })
        }
        (Axiom::O7, false) => {
            let (x1p, x1, x2p, x2, w) = (g("x1'")?, g("x1")?, g("x2'")?, g("x2")?, g("w")?);
            let s = add(x1, x2);
            wb(x1p, x1)
                && le(x1, w)
                && wb(x2p, x2)
                && le(x2, w)
                && !space.iter().any(|x| wb(x1p, x) && wb(x2p, x) && le(x, w) && le(x, &s))
        }
        (Axiom::O7, true) => {
            let (x1p, x1, x2p, x2, wp, w) = (g("x1'")?, g("x1")?, g("x2'")?, g("x2")?, g("w'")?, g("w")?);
            let s = add(x1, x2);
            wb(x1p, x1)
                && wb(x1, wp)
                && wb(x2p, x2)
                && wb(x2, wp)
                && wb(wp, w)
                && !space.iter().any(|x| wb(x1p, x) && wb(x2p, x) && wb(x, w) && wb(x, &s))
        }
        (Axiom::WeakCancellation, false) => {
            let (x, y, z) = (g("x")?, g("y")?, g("z")?);
            wb(&add(x, z), &add(y, z)) && !wb(x, y)
        }
        (Axiom::WeakCancellation, true) => {
            let (xp, x, yp, y, zp, z) = (g("x'")?, g("x")?, g("y'")?, g("y")?, g("z'")?, g("z")?);
            wb(xp, x) && wb(yp, y) && wb(zp, z) && wb(&add(x, z), &add(yp, zp)) && !wb(xp, y)
        }
        (Axiom::Simple, _) => {
            let (x, y) = (g("x")?, g("y")?);
            *y != c.zero() && !le(x, &c.infinite_multiple(y))
        }
        (Axiom::Riesz, _) => {
            let (x0, x1, y0, y1) = (g("x0")?, g("x1")?, g("y0")?, g("y1")?);
            [y0, y1].iter().all(|y| le(x0, y) && le(x1, y))
                && !space.iter().any(|z| le(x0, z) && le(x1, z) && le(z, y0) && le(z, y1))
        }
        (Axiom::AlmostDivisible, _) => {
            let (xp, x) = (g("x'")?, g("x")?);
            let n = g("n")?.ext().and_then(ExtNat::finite).ok_or_else(|| Error::MalformedQuery("n".into()))?;
            wb(xp, x) && !space.iter().any(|z| wb(&c.multiple(z, n), x) && wb(xp, &c.multiple(z, n + 1)))
        }
    })
}

fn finite_coords(e: &Elem) -> Vec<u64> {
    match e {
        Elem::Idx(_) => vec![],
        Elem::Ext(v) => v.finite().into_iter().collect(),
        Elem::Tuple(v) => v.iter().flat_map(finite_coords).collect(),
    }
}

/// Softness of one element: every `x' ≪ x` has some `k ≥ 0` with
/// `(k+1)x' ≪ kx`.
///
/// On tables this is exact. On extended-natural carriers it is decided on
/// the basis fragment one level above the largest finite coordinate of `x`,
/// which contains the hardest approximant (`x` with its infinite coordinates
/// lowered), and with `k` up to that level.
pub fn is_soft(carrier: &Carrier, x: &Elem, fuel: u64) -> Result<Verdict> {
    carrier.ensure(x)?;
    let (approximants, max_k) = match carrier.table() {
        Some(t) => (carrier.elements().expect("finite"), t.len() as u64 + 1),
        None => {
            if !search_is_complete(carrier) {
                return Err(Error::Unsupported("softness".into(), carrier.describe()));
            }
            let level = finite_coords(x).into_iter().max().unwrap_or(0) + 1;
            (carrier.basis_fragment(level), level + 1)
        }
    };
    let budget = Budget::new(if carrier.table().is_some() { u64::MAX } else { fuel });
    for xp in approximants.iter().filter(|xp| carrier.waybelow(xp, x)) {
        let mut found = false;
        for k in 0..=max_k {
            if !budget.spend(1) {
                return Ok(Verdict::Unknown { fuel, level: k });
            }
            if carrier.waybelow(&carrier.multiple(xp, k + 1), &carrier.multiple(x, k)) {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(Verdict::fails(Witness::new().with("x'", xp.clone()).with("x", x.clone())));
        }
    }
    Ok(Verdict::Holds)
}

/// The hypotheses under which the soft elements form a sub-Cu-semigroup
/// with O5 and O6.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoftHypotheses {
    pub simple: Verdict,
    pub weak_cancellation: Verdict,
    pub o5: Verdict,
    pub o6: Verdict,
}

impl SoftHypotheses {
    pub fn all_not_refuted(&self) -> bool {
        [&self.simple, &self.weak_cancellation, &self.o5, &self.o6].iter().all(|v| v.not_refuted())
    }
}

/// The soft elements of a carrier, or of one fragment of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoftPart {
    pub elements: Vec<Elem>,
    /// Elements whose softness ran out of fuel.
    pub unknown: Vec<Elem>,
    /// `None` for tables; the fragment level otherwise.
    pub level: Option<u64>,
    pub hypotheses: SoftHypotheses,
}

impl SoftPart {
    /// The soft elements as a table of their own, when they are closed under
    /// addition.
    pub fn standalone(&self, carrier: &Carrier) -> Option<Carrier> {
        let els = &self.elements;
        let pos = |e: &Elem| els.iter().position(|x| x == e);
        let mut add = vec![vec![0; els.len()]; els.len()];
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                add[i][j] = pos(&carrier.add(a, b))?;
            }
        }
        let leq = els.iter().map(|a| els.iter().map(|b| carrier.leq(a, b)).collect()).collect();
        let t = FiniteCuTable::new(add, leq).ok()?;
        Carrier::finite(t).ok()
    }
}

/// Level used for the soft part of catalog carriers.
pub const SOFT_LEVEL: u64 = 4;

pub fn soft_part(carrier: &Carrier, fuel: u64) -> Result<SoftPart> {
    let (candidates, level) = match carrier.table() {
        Some(_) => (carrier.elements().expect("finite"), None),
        None => (carrier.fragment(SOFT_LEVEL), Some(SOFT_LEVEL)),
    };
    let mut elements = Vec::new();
    let mut unknown = Vec::new();
    for x in candidates {
        match is_soft(carrier, &x, fuel)? {
            Verdict::Holds => elements.push(x),
            Verdict::Unknown { .. } => unknown.push(x),
            Verdict::Fails { .. } => {}
        }
    }
    let v = |a: Axiom| check_axiom(carrier, a, Mode::Direct, None, fuel).map(|r| r.verdict);
    let hypotheses = SoftHypotheses {
        simple: v(Axiom::Simple)?,
        weak_cancellation: v(Axiom::WeakCancellation)?,
        o5: v(Axiom::O5)?,
        o6: v(Axiom::O6)?,
    };
    Ok(SoftPart { elements, unknown, level, hypotheses })
}

/// Chain-shape test for the elementary semigroups: a totally ordered
/// carrier. This ignores the addition, so it over-approximates.
pub fn is_elementary_shape(carrier: &Carrier) -> bool {
    match carrier {
        Carrier::Nbar => true,
        Carrier::Finite(t) | Carrier::Limit(t) => t.is_chain(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::direct_sum;

    fn direct(c: &Carrier, a: Axiom) -> Verdict {
        check_axiom(c, a, Mode::Direct, None, 400).unwrap().verdict
    }

    #[test]
    fn small_chains() {
        for a in [Axiom::O5, Axiom::O7] {
            assert!(direct(&Carrier::chain(2), a).holds());
        }
        assert!(direct(&Carrier::chain(3), Axiom::O6).holds());
        assert!(direct(&Carrier::chain(4), Axiom::Riesz).holds());
    }

    #[test]
    fn chain_fails_weak_cancellation() {
        let c = Carrier::chain(2);
        let v = direct(&c, Axiom::WeakCancellation);
        let w = v.witness().expect("fails");
        assert!(replay(&c, Axiom::WeakCancellation, Mode::Direct, w).unwrap());
        // the specific instance 1+2 ≪ 0+2 with 1 ≪ 0 false
        let w = Witness::new().with("x", Elem::Idx(1)).with("y", Elem::Idx(0)).with("z", Elem::Idx(2));
        assert!(replay(&c, Axiom::WeakCancellation, Mode::Direct, &w).unwrap());
    }

    #[test]
    fn simplicity() {
        assert!(direct(&Carrier::trivial(), Axiom::Simple).holds());
        let c = direct_sum(&Carrier::chain(1), &Carrier::chain(1));
        let v = direct(&c, Axiom::Simple);
        assert!(v.is_fail());
        // x=(1,0), y=(0,1) in the product indexing a*2+b
        let w = Witness::new().with("x", Elem::Idx(2)).with("y", Elem::Idx(1));
        assert!(replay(&c, Axiom::Simple, Mode::Direct, &w).unwrap());
        assert!(direct(&Carrier::Nbar, Axiom::Simple).not_refuted());
    }

    #[test]
    fn basis_mode_needs_a_basis() {
        assert_eq!(check_o5(&Carrier::chain(2), Mode::Basis, None, 10), Err(Error::MissingBasis));
    }

    #[test]
    fn nbar_up_to_fuel() {
        for a in [Axiom::O5, Axiom::O6, Axiom::O7, Axiom::WeakCancellation, Axiom::Riesz] {
            let v = direct(&Carrier::Nbar, a);
            assert!(v.is_unknown(), "{a}: {v:?}");
            let b = check_axiom(&Carrier::Nbar, a, Mode::Basis, Some(&BasisRepr::Enumerated), 400).unwrap();
            assert!(b.verdict.is_unknown(), "{a} basis: {:?}", b.verdict);
        }
    }

    #[test]
    fn nbar_is_not_almost_divisible() {
        let v = direct(&Carrier::Nbar, Axiom::AlmostDivisible);
        let w = v.witness().expect("fails");
        assert!(replay(&Carrier::Nbar, Axiom::AlmostDivisible, Mode::Direct, w).unwrap());
        let w = Witness::new().with("x'", Elem::nat(1)).with("x", Elem::nat(1)).with("n", Elem::nat(2));
        assert!(replay(&Carrier::Nbar, Axiom::AlmostDivisible, Mode::Direct, &w).unwrap());
    }

    #[test]
    fn idempotent_bit_is_divisible_and_soft() {
        let c = Carrier::chain(1);
        assert!(direct(&c, Axiom::AlmostDivisible).holds());
        assert!(is_soft(&c, &Elem::Idx(1), 0).unwrap().holds());
    }

    #[test]
    fn nbar_soft_part() {
        let s = soft_part(&Carrier::Nbar, 1000).unwrap();
        assert_eq!(s.elements, vec![Elem::nat(0), Elem::INF]);
        assert!(s.unknown.is_empty());
        let t = s.standalone(&Carrier::Nbar).unwrap();
        assert_eq!(t.table().unwrap(), &FiniteCuTable::saturating_chain(1));
    }

    #[test]
    fn only_the_whole_table_is_a_basis() {
        let c = Carrier::chain(3);
        let bases = enumerate_bases(&c).unwrap();
        assert_eq!(bases, vec![BasisRepr::Explicit(c.elements().unwrap())]);
    }
}
