//! The acceptance checks, numbered 1 to 11. Each returns a pass/fail line
//! with the counts it covered; nothing here is timed, so reports are
//! reproducible.

use std::path::Path;

use serde::Serialize;

use crate::approx::{self, ApproxFamily, ChainSystem, QueryBounds, TransferProperty};
use crate::axioms::{self, Axiom, BasisRepr, Mode};
use crate::carrier::enumerate::{random_valid_tables, valid_tables_up_to_iso};
use crate::carrier::oracle::check_o1_to_o4;
use crate::carrier::{Carrier, Elem, ExtNat, NbarSet};
use crate::cli;
use crate::dimension::{self, DimBounds, DimValue};
use crate::error::Result;
use crate::subcu::{self, SubMonoidRepr};

/// Dimensions of `C_1 … C_4`, as computed by the brute-force oracle in the
/// test suite.
pub const CHAIN_DIMS: [usize; 4] = [0, 0, 0, 0];

/// Size and seed of the random table sample in check 1.
pub const RANDOM_TABLES: usize = 500;
pub const RANDOM_SEED: u64 = 20_240_611;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub line: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub criteria: Vec<Criterion>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

pub const NAMES: [&str; 11] = [
    "finite-carrier foundation",
    "basis characterizations",
    "dimension fixtures",
    "permanence",
    "sub-Cu characterizations",
    "delta and lattice",
    "approximation and limits",
    "Lowenheim-Skolem closures",
    "interpolation from dimension zero",
    "soft parts",
    "CLI determinism",
];

pub fn run_all() -> SelftestReport {
    SelftestReport { criteria: (1..=11).map(run_one).collect() }
}

pub fn run_one(id: u8) -> Criterion {
    let outcome = match id {
        1 => foundation(),
        2 => basis_equivalence(),
        3 => dimension_fixtures(),
        4 => permanence(),
        5 => sub_cu(),
        6 => delta_and_lattice(),
        7 => approximation(),
        8 => lowenheim(),
        9 => interpolation(),
        10 => soft_parts(),
        11 => determinism(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let name = NAMES.get(usize::from(id).wrapping_sub(1)).copied().unwrap_or("unknown");
    let line = format!("criterion {id:>2} [{}] {name}: {detail}", if passed { "PASS" } else { "FAIL" });
    Criterion { id, name, passed, detail, line }
}

/// One representative of every valid table with at most `max_n` elements.
pub fn suite(max_n: usize) -> Vec<Carrier> {
    valid_tables_up_to_iso(max_n).into_iter().map(Carrier::finite_unchecked).collect()
}

type Outcome = Result<(bool, String)>;

fn foundation() -> Outcome {
    let exhaustive = suite(3);
    let random: Vec<Carrier> = random_valid_tables(RANDOM_TABLES, 5, RANDOM_SEED).into_iter().map(Carrier::finite_unchecked).collect();
    let mut bad = 0;
    for c in exhaustive.iter().chain(&random) {
        let r = check_o1_to_o4(c, 0);
        if !r.certified() || !r.waybelow_is_order.as_ref().is_some_and(|v| v.holds()) {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("{} exhaustive + {} random tables, {bad} not certified", exhaustive.len(), random.len())))
}

fn basis_equivalence() -> Outcome {
    let mut comparisons = 0;
    let mut mismatches = 0;
    for c in suite(5) {
        for basis in axioms::enumerate_bases(&c)? {
            for a in [Axiom::O5, Axiom::O6, Axiom::O7, Axiom::WeakCancellation] {
                let d = axioms::check_axiom(&c, a, Mode::Direct, None, 0)?.verdict;
                let b = axioms::check_axiom(&c, a, Mode::Basis, Some(&basis), 0)?.verdict;
                comparisons += 1;
                if d.holds() != b.holds() {
                    mismatches += 1;
                }
            }
        }
    }
    Ok((mismatches == 0, format!("{comparisons} direct/basis comparisons, {mismatches} mismatches")))
}

fn dimension_fixtures() -> Outcome {
    let b = DimBounds::default();
    let mut ok = dimension::dim(&Carrier::trivial(), 3, b)? == DimValue::Exact { n: 0 };
    for (m, &expected) in CHAIN_DIMS.iter().enumerate() {
        ok &= dimension::dim(&Carrier::chain(m + 1), 3, b)? == DimValue::Exact { n: expected };
    }
    let mut sums = 0;
    for s in 1..=4 {
        for t in 1..=4 {
            ok &= dimension::verify_sum_permanence(&Carrier::chain(s), &Carrier::chain(t), 3, b)?.holds;
            sums += 1;
        }
    }
    Ok((ok, format!("dim({{0}}) and dim(C_1..C_4) match fixtures, {sums} sums checked")))
}

fn permanence() -> Outcome {
    let mut ideals = 0;
    let mut bad = 0;
    let tables = suite(5);
    for c in &tables {
        let r = dimension::verify_permanence(c, dimension::DEFAULT_MAX_N)?;
        ideals += r.ideals.len();
        bad += r.ideals.iter().filter(|e| !e.holds).count();
    }
    Ok((bad == 0, format!("{} tables, {ideals} ideals, {bad} violations", tables.len())))
}

/// Subsets of N̄ used by checks 5 and 6.
pub fn nbar_instances() -> Vec<SubMonoidRepr> {
    let mut sets = vec![NbarSet::zero(), NbarSet::naturals(), NbarSet::everything(), NbarSet::empty()];
    for d in 1..=4 {
        sets.push(NbarSet::multiples(d));
    }
    for k in 1..=6 {
        sets.push(NbarSet::at_least(k).union(&NbarSet::zero()));
        sets.push(NbarSet::from_elements([ExtNat::ZERO, ExtNat::Fin(k)]));
    }
    sets.push(NbarSet::from_elements([ExtNat::ZERO, ExtNat::Fin(2), ExtNat::Fin(3)]));
    let with_inf: Vec<NbarSet> = sets.iter().map(|s| s.clone().with_inf(true)).collect();
    sets.extend(with_inf);
    sets.into_iter().map(SubMonoidRepr::nbar).collect()
}

/// Every subset containing 0 of every suite table with at most `max_n`
/// elements.
fn table_instances(max_n: usize) -> Vec<(Carrier, SubMonoidRepr)> {
    let mut out = Vec::new();
    for c in suite(max_n) {
        let n = c.table().expect("table").len();
        for mask in (0u32..(1 << n)).filter(|m| m & 1 == 1) {
            out.push((c.clone(), SubMonoidRepr::table((0..n).map(|i| mask & (1 << i) != 0).collect())));
        }
    }
    out
}

fn sub_cu() -> Outcome {
    let c = Carrier::Nbar;
    let nat = subcu::is_sub_cu(&c, &SubMonoidRepr::nbar(NbarSet::naturals()))?;
    let zi = SubMonoidRepr::nbar(NbarSet::zero().with_inf(true));
    let zi_v = subcu::is_sub_cu(&c, &zi)?;
    let zi_d = subcu::derived(&c, &zi)?;
    let five = subcu::is_sub_cu(&c, &SubMonoidRepr::nbar(NbarSet::at_least(5).union(&NbarSet::zero()).with_inf(true)))?;
    let fixtures = !nat.is_sub_cu && !zi_v.is_sub_cu && zi_d.nbar_set() == Some(&NbarSet::zero()) && five.is_sub_cu;
    let mut checked = 0;
    let mut disagreements = 0;
    let nbar = nbar_instances().into_iter().map(|t| (Carrier::Nbar, t));
    for (c, t) in nbar.chain(table_instances(4)) {
        let g = subcu::generated_submonoid(&c, &t, 10_000)?;
        for s in [t, g] {
            let v = subcu::is_sub_cu(&c, &s)?;
            let fixed = subcu::derived(&c, &s)?.same_set(&s);
            checked += 1;
            if !v.agree || v.is_sub_cu != (v.submonoid && fixed) {
                disagreements += 1;
            }
        }
    }
    Ok((
        fixtures && disagreements == 0,
        format!("N̄ fixtures {}, {checked} instances, {disagreements} disagreements", if fixtures { "ok" } else { "wrong" }),
    ))
}

fn delta_and_lattice() -> Outcome {
    let mut bad = 0;
    let mut checked = 0;
    let nbar = nbar_instances().into_iter().map(|t| (Carrier::Nbar, t));
    for (c, seed) in nbar.chain(table_instances(4)) {
        let t = subcu::generated_submonoid(&c, &seed, 10_000)?;
        let d = subcu::delta(&c, &t, 64)?;
        if !d.stabilized {
            continue;
        }
        checked += 1;
        let sup = subcu::sup_closure(&c, &t, 64)?;
        let again = subcu::delta(&c, &d.set, 64)?;
        let certified = subcu::is_sub_cu(&c, &d.set)?.is_sub_cu;
        if !d.set.is_subset(&sup) || !again.set.same_set(&d.set) || !certified {
            bad += 1;
        }
    }
    let mut pairs = 0;
    for c in suite(4) {
        let subs = subcu::enumerate_sub_cu(&c)?;
        for a in &subs {
            for b in &subs {
                pairs += 1;
                let pair = [a.clone(), b.clone()];
                let sup = subcu::lattice_sup(&c, &pair, 64)?;
                let inf = subcu::lattice_inf(&c, &pair, 64)?;
                let uppers: Vec<&SubMonoidRepr> = subs.iter().filter(|s| a.is_subset(s) && b.is_subset(s)).collect();
                let lowers: Vec<&SubMonoidRepr> = subs.iter().filter(|s| s.is_subset(a) && s.is_subset(b)).collect();
                let least = uppers.iter().find(|u| uppers.iter().all(|v| u.is_subset(v)));
                let greatest = lowers.iter().find(|l| lowers.iter().all(|v| v.is_subset(l)));
                if least.is_none_or(|l| !l.same_set(&sup)) || greatest.is_none_or(|g| !g.same_set(&inf)) {
                    bad += 1;
                }
            }
        }
    }
    let two = SubMonoidRepr::nbar(NbarSet::multiples(2).with_inf(true));
    let three = SubMonoidRepr::nbar(NbarSet::multiples(3).with_inf(true));
    let inf = subcu::lattice_inf(&Carrier::Nbar, &[two, three], 64)?;
    let fixture = inf.nbar_set() == Some(&NbarSet::multiples(6).with_inf(true));
    Ok((fixture && bad == 0, format!("{checked} delta instances, {pairs} lattice pairs, {bad} violations, N̄ meet fixture {}", if fixture { "ok" } else { "wrong" })))
}

fn approximation() -> Outcome {
    let bounds = QueryBounds::default();
    let mut queries = 0;
    let mut violations = 0;
    let mut families: Vec<ApproxFamily> = Vec::new();
    let carriers: Vec<Carrier> = suite(4).into_iter().chain((1..=4).map(Carrier::chain)).collect();
    for c in &carriers {
        let f = ApproxFamily::identity(c, 0)?;
        let r = approx::check_approximates(&f, bounds, 0)?;
        queries += r.queries;
        if !r.verdict.holds() {
            violations += 1;
        }
        families.push(f);
    }
    for len in 1..=4 {
        let (lim, rep) = approx::build_limit(&ChainSystem::doubling_chains(len)?, bounds)?;
        queries += rep.approximates.queries;
        if !rep.all_hold() {
            violations += 1;
        }
        families.push(ApproxFamily::new(lim.carrier.clone(), lim.canonical.clone())?);
    }
    let mut transfers = 0;
    for f in &families {
        for p in [Axiom::O5, Axiom::O6, Axiom::O7, Axiom::WeakCancellation].map(TransferProperty::Axiom).into_iter().chain([TransferProperty::Dim]) {
            let t = approx::transfer_check(f, p, 0, DimBounds::default())?;
            transfers += 1;
            if !t.holds {
                violations += 1;
            }
        }
    }
    Ok((violations == 0, format!("{} identity families, 4 limits, {queries} queries, {transfers} transfer checks, {violations} violations", carriers.len())))
}

fn lowenheim() -> Outcome {
    let g = subcu::gen_countably_based_sub(&Carrier::Nbar, &[Elem::INF], 100)?;
    let mut ok = g.sub.nbar_set() == Some(&NbarSet::everything()) && g.verdict.is_sub_cu;
    let nb = subcu::gen_sub_with_dim(&Carrier::Nbar, &[Elem::INF], 0, DimBounds { width: 3, fuel: 500 }, 20)?;
    ok &= !nb.check.is_no();
    let mut grown = 0;
    let mut char_checks = 0;
    let mut char_bad = 0;
    let mut singleton_refuted = 0;
    for c in suite(5) {
        let d = dimension::dim(&c, 2, DimBounds::default())?;
        if let Some(n) = d.value() {
            if c.table().expect("table").len() <= 4 {
                for x in c.elements().expect("finite") {
                    let r = subcu::gen_sub_with_dim(&c, std::slice::from_ref(&x), n, DimBounds::default(), 64)?;
                    grown += 1;
                    ok &= r.check.is_yes() && r.sub.contains(&x) && r.verdict.is_sub_cu;
                }
            }
        }
        for n in 0..=2 {
            let r = subcu::char_dim_finite(&c, n)?;
            char_checks += 1;
            if !r.agree {
                char_bad += 1;
            }
            if !subcu::singleton_char_dim_finite(&c, n)?.agree {
                singleton_refuted += 1;
            }
        }
    }
    ok &= char_bad == 0;
    Ok((
        ok,
        format!(
            "N̄ closure ok, {grown} bounded-dimension closures, {char_checks} finite-subset characterizations ({char_bad} disagree); \
             the singleton-only form disagrees on {singleton_refuted}"
        ),
    ))
}

fn interpolation() -> Outcome {
    let mut eligible = 0;
    let mut bad = 0;
    let tables = suite(5);
    for c in &tables {
        if dimension::interpolation_hypotheses(c)? {
            eligible += 1;
            if !axioms::check_riesz_interpolation(c, 0)?.verdict.holds() {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("{} tables, {eligible} satisfy the hypotheses, {bad} lack interpolation", tables.len())))
}

fn soft_parts() -> Outcome {
    let part = axioms::soft_part(&Carrier::Nbar, 2_000)?;
    let fixture = part.elements == vec![Elem::nat(0), Elem::INF];
    let mut instances = 0;
    let mut bad = 0;
    let bounds = DimBounds { width: 3, fuel: 2_000 };
    let carriers: Vec<Carrier> = suite(5).into_iter().chain([Carrier::Nbar]).collect();
    for c in &carriers {
        let r = dimension::soft_dim_bounds(c, dimension::DEFAULT_MAX_N, bounds)?;
        if !r.hypotheses.all_not_refuted() || r.dim.value().is_none() {
            continue;
        }
        instances += 1;
        if !(r.lower && r.upper) {
            bad += 1;
        }
    }
    Ok((fixture && bad == 0, format!("soft_part(N̄) = {{0,inf}} {}, {instances} instances, {bad} violations", if fixture { "ok" } else { "wrong" })))
}

fn determinism() -> Outcome {
    let commands: [&[&str]; 5] = [
        &["axioms", "chain:2"],
        &["dim", "sum:chain:1+chain:2", "--max", "2"],
        &["lattice", "chain:2", "--enumerate", "--pairs"],
        &["closure", "nbar", "--op", "delta", "--subset", "0,inf"],
        &["dim", "nbar", "--max", "1", "--width", "3", "--fuel", "300"],
    ];
    let mut identical = 0;
    for args in commands {
        let once = || -> Result<String> {
            let cli = <cli::Cli as clap::Parser>::try_parse_from(std::iter::once("cusg").chain(args.iter().copied()))
                .map_err(|e| crate::error::Error::InvalidParams(e.to_string()))?;
            Ok(cli::execute(&cli, Path::new("."))?.to_json())
        };
        if once()? == once()? {
            identical += 1;
        }
    }
    let tables = suite(4);
    let round_trips = tables
        .iter()
        .filter(|c| {
            let t = c.table().expect("table");
            let text = cli::format::serialize_table(t);
            cli::format::parse_table(&text).is_ok_and(|u| &u == t && cli::format::serialize_table(&u) == text)
        })
        .count();
    let ok = identical == commands.len() && round_trips == tables.len();
    Ok((ok, format!("{identical}/{} reports byte-identical, {round_trips}/{} tables round-trip", commands.len(), tables.len())))
}

#[allow(dead_code)]
fn basis_of(c: &Carrier) -> BasisRepr {
    BasisRepr::default_for(c)
}
