//! The `cusg` command line: argument definitions, dispatch, and text or
//! JSON output. The binary only calls [`main_with`].

pub mod format;
pub mod registry;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::approx::{self, ApproxFamily, ChainSystem, MapRule, QueryBounds, TransferProperty};
use crate::axioms::{self, Axiom, BasisRepr, Mode};
use crate::carrier::oracle::check_o1_to_o4;
use crate::carrier::{Carrier, Elem, ExtNat, NbarSet};
use crate::dimension::{self, DimBounds};
use crate::error::{Error, Result};
use crate::subcu::{self, SubMonoidRepr};
use crate::verdict::Verdict;
use format::{parse_chain, parse_map, ChainMap, MapFile};
pub use report::{ResultCache, RunReport, Status, USAGE_EXIT};

/// Fuel when neither `--fuel` nor `CUSG_FUEL` is given.
pub const DEFAULT_FUEL: u64 = 10_000;

#[derive(Debug, Parser)]
#[command(name = "cusg", version, about = "Decide axioms, dimension and closures of computable Cu-semigroups")]
pub struct Cli {
    /// Print the JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Directory for cached reports.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Compare a fresh run against the cached report instead of reusing it.
    #[arg(long, global = true, requires = "cache")]
    pub verify_cache: bool,
    /// Search budget for infinite carriers (default: $CUSG_FUEL or 10000).
    #[arg(long, global = true)]
    pub fuel: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the monoid laws and check O1-O4.
    Check { target: String },
    /// Check O5, O6, O7, weak cancellation, simplicity, Riesz interpolation
    /// and almost divisibility.
    Axioms {
        target: String,
        /// Restrict to one axiom (o5, o6, o7, wc, simple, riesz, div); repeatable.
        #[arg(long = "axiom")]
        axioms: Vec<String>,
        #[arg(long, default_value = "direct")]
        mode: String,
    },
    /// Compute the covering dimension.
    Dim {
        target: String,
        /// Largest dimension tried.
        #[arg(long, default_value_t = dimension::DEFAULT_MAX_N)]
        max: usize,
        /// Largest number of summands on infinite carriers.
        #[arg(long, default_value_t = 6)]
        width: usize,
        /// Also report the soft part and its dimension bounds.
        #[arg(long)]
        soft: bool,
    },
    /// Check that ideals, quotients and direct sums do not raise dimension.
    Permanence {
        target: String,
        /// Second summand for the direct-sum check.
        #[arg(long)]
        with: Option<String>,
        #[arg(long, default_value_t = dimension::DEFAULT_MAX_N)]
        max: usize,
    },
    /// Apply a closure operator to a subset.
    Closure {
        target: String,
        #[arg(long, value_enum)]
        op: ClosureOp,
        /// Comma-separated elements; on nbar also `k..` (all n >= k) and `*d` (multiples of d).
        #[arg(long)]
        subset: String,
        /// Treat the subset as generators and close it under addition first.
        #[arg(long)]
        gens: bool,
    },
    /// List the sub-Cu-semigroups of a small table.
    Lattice {
        target: String,
        #[arg(long)]
        enumerate: bool,
        /// Also list suprema and infima of all pairs.
        #[arg(long)]
        pairs: bool,
    },
    /// Grow a seed into a sub-Cu-semigroup, optionally of bounded dimension.
    Lowenheim {
        target: String,
        #[arg(long)]
        seed: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Check that a family of maps approximates a target.
    Approx {
        #[arg(long)]
        target: String,
        /// `SOURCE:MAPFILE`, or `identity`; repeatable.
        #[arg(long = "member", required = true)]
        members: Vec<String>,
        /// Largest |J|, |K| and coefficient.
        #[arg(long, default_value = "3,3,3")]
        bounds: String,
        /// Seeded random queries on top of the exhaustive ones.
        #[arg(long, default_value_t = 200)]
        random: usize,
    },
    /// Build the limit of a chain file and check the canonical maps.
    Limit { chainfile: String },
    /// List the catalog names.
    Catalog,
    /// Run the acceptance checks.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClosureOp {
    Generate,
    Seq,
    Sup,
    Derived,
    Delta,
    SubCu,
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_EXIT } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, Path::new(".")) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", render_text(&report));
            }
            report.status.exit_code()
        }
        Err(e) => {
            eprintln!("cusg: {e}");
            USAGE_EXIT
        }
    }
}

fn env_fuel() -> Option<u64> {
    std::env::var("CUSG_FUEL").ok().and_then(|v| v.trim().parse().ok())
}

/// Runs the command, consulting the cache when one is configured.
pub fn execute(cli: &Cli, base: &Path) -> Result<RunReport> {
    let fuel = cli.fuel.or_else(env_fuel).unwrap_or(DEFAULT_FUEL);
    let cache = cli.cache.as_ref().map(ResultCache::open).transpose()?;
    let start = Instant::now();
    let (input, input_digest) = describe_input(&cli.command, base);
    let bounds = bounds_of(&cli.command, fuel);
    let probe = RunReport {
        command: command_name(&cli.command).into(),
        input: input.clone(),
        input_digest: input_digest.clone(),
        bounds: bounds.clone(),
        status: Status::Ok,
        result: Value::Null,
        timing_ms: None,
    };
    if let (Some(c), false) = (&cache, cli.verify_cache) {
        if let Some(hit) = c.get(&probe.key()) {
            return Ok(hit);
        }
    }
    let (status, result) = run(&cli.command, base, fuel)?;
    let mut report = RunReport { status, result, ..probe };
    if let Some(c) = &cache {
        if cli.verify_cache {
            let agrees = c.verify(&report);
            report.result = json!({ "fresh": report.result, "cache_agrees": agrees });
            if agrees == Some(false) {
                report.status = Status::Fails;
            }
        } else {
            c.put(&report)?;
        }
    }
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Axioms { .. } => "axioms",
        Command::Dim { .. } => "dim",
        Command::Permanence { .. } => "permanence",
        Command::Closure { .. } => "closure",
        Command::Lattice { .. } => "lattice",
        Command::Lowenheim { .. } => "lowenheim",
        Command::Approx { .. } => "approx",
        Command::Limit { .. } => "limit",
        Command::Catalog => "catalog",
        Command::Selftest { .. } => "selftest",
    }
}

fn describe_input(c: &Command, base: &Path) -> (String, String) {
    let input = match c {
        Command::Check { target }
        | Command::Axioms { target, .. }
        | Command::Dim { target, .. }
        | Command::Permanence { target, .. }
        | Command::Closure { target, .. }
        | Command::Lattice { target, .. }
        | Command::Lowenheim { target, .. }
        | Command::Approx { target, .. } => target.clone(),
        Command::Limit { chainfile } => chainfile.clone(),
        Command::Catalog | Command::Selftest { .. } => String::new(),
    };
    let path = base.join(&input);
    let digest = match std::fs::read(&path) {
        Ok(bytes) if path.is_file() => report::digest(&bytes),
        _ => report::digest(input.as_bytes()),
    };
    (input, digest)
}

fn bounds_of(c: &Command, fuel: u64) -> Value {
    match c {
        Command::Axioms { axioms, mode, .. } => json!({ "fuel": fuel, "axioms": axioms, "mode": mode }),
        Command::Dim { max, width, soft, .. } => json!({ "fuel": fuel, "max": max, "width": width, "soft": soft }),
        Command::Permanence { with, max, .. } => json!({ "fuel": fuel, "with": with, "max": max }),
        Command::Closure { op, subset, gens, .. } => json!({ "fuel": fuel, "op": format!("{op:?}"), "subset": subset, "gens": gens }),
        Command::Lattice { enumerate, pairs, .. } => json!({ "enumerate": enumerate, "pairs": pairs }),
        Command::Lowenheim { seed, dim, .. } => json!({ "fuel": fuel, "seed": seed, "dim": dim }),
        Command::Approx { members, bounds, random, .. } => json!({ "fuel": fuel, "members": members, "bounds": bounds, "random": random }),
        _ => json!({ "fuel": fuel }),
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("results serialize")
}

fn verdict_status(v: &Verdict) -> Status {
    match v {
        Verdict::Holds => Status::Ok,
        Verdict::Fails { .. } => Status::Fails,
        Verdict::Unknown { .. } => Status::Inconclusive,
    }
}

fn flag_status(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Fails
    }
}

/// Dispatches one command and returns its status and JSON result.
pub fn run(cmd: &Command, base: &Path, fuel: u64) -> Result<(Status, Value)> {
    let carrier = |name: &str| registry::resolve(name, base);
    match cmd {
        Command::Check { target } => {
            let c = carrier(target)?;
            let r = check_o1_to_o4(&c, fuel);
            let mut status = [&r.o1, &r.o2, &r.o3, &r.o4].into_iter().fold(Status::Ok, |s, v| s.and(verdict_status(v)));
            if let Some(v) = &r.waybelow_is_order {
                status = status.and(verdict_status(v));
            }
            Ok((status, json!({ "carrier": c.describe(), "structure": to_value(&r) })))
        }
        Command::Axioms { target, axioms: names, mode } => {
            let c = carrier(target)?;
            let mode: Mode = mode.parse()?;
            let list: Vec<Axiom> = if names.is_empty() {
                Axiom::ALL.to_vec()
            } else {
                names.iter().map(|n| n.parse()).collect::<Result<_>>()?
            };
            let basis = BasisRepr::default_for(&c);
            let mut status = Status::Ok;
            let mut out = Vec::new();
            for a in list {
                let v = axioms::check_axiom(&c, a, mode, Some(&basis), fuel)?;
                status = status.and(verdict_status(&v.verdict));
                out.push(to_value(&v));
            }
            Ok((status, json!({ "carrier": c.describe(), "axioms": out })))
        }
        Command::Dim { target, max, width, soft } => {
            let c = carrier(target)?;
            let bounds = DimBounds { width: *width, fuel };
            let d = dimension::dim(&c, *max, bounds)?;
            let status = match d {
                dimension::DimValue::Exact { .. } => Status::Ok,
                dimension::DimValue::AtMostUpToBounds { .. } => Status::Inconclusive,
                dimension::DimValue::Above { .. } => Status::Fails,
            };
            let mut result = json!({ "carrier": c.describe(), "dim": to_value(&d) });
            if let dimension::DimValue::Above { max_n } | dimension::DimValue::Exact { n: max_n } = d {
                let refuted = match d {
                    dimension::DimValue::Above { .. } => Some(max_n),
                    _ => max_n.checked_sub(1),
                };
                if let Some(k) = refuted {
                    let check = dimension::check_dim_at_most(&c, k, bounds, false)?;
                    result["refutation"] = to_value(&check);
                }
            }
            if *soft {
                result["soft"] = to_value(&dimension::soft_dim_bounds(&c, *max, bounds)?);
            }
            Ok((status, result))
        }
        Command::Permanence { target, with, max } => {
            let c = carrier(target)?;
            match with {
                Some(other) => {
                    let t = carrier(other)?;
                    let r = dimension::verify_sum_permanence(&c, &t, *max, DimBounds { fuel, ..Default::default() })?;
                    Ok((flag_status(r.holds), to_value(&r)))
                }
                None => {
                    let r = dimension::verify_permanence(&c, *max)?;
                    Ok((flag_status(r.holds), to_value(&r)))
                }
            }
        }
        Command::Closure { target, op, subset, gens } => {
            let c = carrier(target)?;
            let mut t = parse_subset(&c, subset)?;
            if *gens {
                t = subcu::generated_submonoid(&c, &t, fuel)?;
            }
            let (out, extra) = match op {
                ClosureOp::Generate => (subcu::generated_submonoid(&c, &t, fuel)?, Value::Null),
                ClosureOp::Seq => (subcu::seq_closure(&c, &t)?, Value::Null),
                ClosureOp::Sup => (subcu::sup_closure(&c, &t, fuel)?, Value::Null),
                ClosureOp::Derived => (subcu::derived(&c, &t)?, Value::Null),
                ClosureOp::Delta => {
                    let d = subcu::delta(&c, &t, fuel)?;
                    let v = json!({ "iterations": d.iterations });
                    (d.set, v)
                }
                ClosureOp::SubCu => {
                    let v = subcu::is_sub_cu(&c, &t)?;
                    let status = flag_status(v.is_sub_cu);
                    return Ok((status, json!({ "subset": to_value(&t), "verdict": to_value(&v) })));
                }
            };
            let status = if out.stabilized { Status::Ok } else { Status::Inconclusive };
            Ok((status, json!({ "input": to_value(&t), "output": to_value(&out), "details": extra })))
        }
        Command::Lattice { target, enumerate, pairs } => {
            let c = carrier(target)?;
            let subs = subcu::enumerate_sub_cu(&c)?;
            let mut result = json!({ "carrier": c.describe(), "count": subs.len() });
            if *enumerate || !*pairs {
                result["sub_cu"] = subs.iter().map(|s| Value::String(s.to_string())).collect();
            }
            if *pairs {
                let mut rows = Vec::new();
                for (i, a) in subs.iter().enumerate() {
                    for b in &subs[i..] {
                        let pair = [a.clone(), b.clone()];
                        let sup = subcu::lattice_sup(&c, &pair, fuel)?;
                        let inf = subcu::lattice_inf(&c, &pair, fuel)?;
                        rows.push(json!({ "a": a.to_string(), "b": b.to_string(), "sup": sup.to_string(), "inf": inf.to_string() }));
                    }
                }
                result["pairs"] = Value::Array(rows);
            }
            Ok((Status::Ok, result))
        }
        Command::Lowenheim { target, seed, dim } => {
            let c = carrier(target)?;
            let seed = parse_elems(&c, seed)?;
            match dim {
                None => {
                    let g = subcu::gen_countably_based_sub(&c, &seed, fuel)?;
                    let status = if !g.sub.stabilized { Status::Inconclusive } else { flag_status(g.verdict.is_sub_cu) };
                    Ok((status, to_value(&g)))
                }
                Some(n) => {
                    let g = subcu::gen_sub_with_dim(&c, &seed, *n, DimBounds { fuel, ..Default::default() }, fuel)?;
                    let status = if g.check.is_yes() { Status::Ok } else if g.check.is_no() { Status::Fails } else { Status::Inconclusive };
                    Ok((status, to_value(&g)))
                }
            }
        }
        Command::Approx { target, members, bounds, random } => {
            let t = carrier(target)?;
            let mut maps = Vec::new();
            for m in members {
                maps.push(load_member(m, &t, base, fuel)?);
            }
            let family = ApproxFamily::new(t.clone(), maps)?;
            let qb = parse_bounds(bounds, *random)?;
            let r = approx::check_approximates(&family, qb, fuel)?;
            let mut result = json!({ "target": t.describe(), "report": to_value(&r) });
            let mut status = verdict_status(&r.verdict);
            if t.is_finite() && family.members.iter().all(|m| m.source.is_finite()) {
                let mut transfers = Vec::new();
                for p in [Axiom::O5, Axiom::O6, Axiom::O7, Axiom::WeakCancellation].map(TransferProperty::Axiom).into_iter().chain([TransferProperty::Dim]) {
                    let tr = approx::transfer_check(&family, p, fuel, DimBounds { fuel, ..Default::default() })?;
                    status = status.and(flag_status(tr.holds));
                    transfers.push(to_value(&tr));
                }
                result["transfer"] = Value::Array(transfers);
            }
            Ok((status, result))
        }
        Command::Limit { chainfile } => {
            let path = base.join(chainfile);
            let file = parse_chain(&std::fs::read_to_string(&path)?)?;
            let dir = path.parent().unwrap_or(base);
            let stages = file.stages.iter().map(|s| registry::resolve(s, dir)).collect::<Result<Vec<_>>>()?;
            let mut maps = Vec::new();
            for (i, m) in file.maps.iter().enumerate() {
                let rule = match m {
                    ChainMap::Identity => MapRule::Identity,
                    ChainMap::Entries(f) => table_rule(f, &stages[i], &stages[i + 1])?,
                };
                maps.push(approx::validate_morphism(&stages[i], &stages[i + 1], rule, fuel)?);
            }
            let sys = ChainSystem::new(stages, maps)?;
            let (lim, rep) = approx::build_limit(&sys, QueryBounds::default())?;
            let result = json!({
                "limit": format::serialize_table(lim.carrier.table().expect("finite limit")),
                "class_of": lim.class_of,
                "report": to_value(&rep),
            });
            Ok((flag_status(rep.all_hold()), result))
        }
        Command::Catalog => Ok((Status::Ok, json!({ "catalog": to_value(&registry::registry()) }))),
        Command::Selftest { only } => {
            let r = match only {
                Some(id) => crate::selftest::SelftestReport { criteria: vec![crate::selftest::run_one(*id)] },
                None => crate::selftest::run_all(),
            };
            Ok((flag_status(r.passed()), to_value(&r)))
        }
    }
}

fn parse_bounds(s: &str, random: usize) -> Result<QueryBounds> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<u64>().map_err(|_| Error::InvalidParams(format!("bad bounds `{s}`")));
    match parts.as_slice() {
        [j, k, c] => Ok(QueryBounds { j: num(j)? as usize, k: num(k)? as usize, coeff: num(c)?, random, ..Default::default() }),
        _ => Err(Error::InvalidParams(format!("bounds must be J,K,C, got `{s}`"))),
    }
}

fn table_rule(f: &MapFile, source: &Carrier, target: &Carrier) -> Result<MapRule> {
    let n = source.table().ok_or_else(|| Error::InvalidMorphism("map files need a finite source".into()))?.len();
    if f.entries.len() != n || f.entries.iter().enumerate().any(|(i, (j, _))| i != *j) {
        return Err(Error::InvalidMorphism(format!("the map must list each of the {n} source elements once")));
    }
    let images = f.entries.iter().map(|(_, e)| target.parse_elem(e)).collect::<Result<_>>()?;
    Ok(MapRule::Table { images })
}

fn load_member(member: &str, target: &Carrier, base: &Path, fuel: u64) -> Result<approx::CuMorphismRepr> {
    if member == "identity" {
        return approx::validate_morphism(target, target, MapRule::Identity, fuel);
    }
    let (src, map) = member
        .rsplit_once(':')
        .ok_or_else(|| Error::InvalidParams(format!("member `{member}` is not SOURCE:MAPFILE")))?;
    let source = registry::resolve(src, base)?;
    let file = parse_map(&std::fs::read_to_string(base.join(map))?)?;
    let rule = table_rule(&file, &source, target)?;
    approx::validate_morphism(&source, target, rule, fuel)
}

/// Splits at commas outside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.into_iter().filter(|t| !t.is_empty()).collect()
}

fn parse_elems(c: &Carrier, s: &str) -> Result<Vec<Elem>> {
    split_top(s).into_iter().map(|t| c.parse_elem(t)).collect()
}

fn parse_subset(c: &Carrier, s: &str) -> Result<SubMonoidRepr> {
    if !matches!(c, Carrier::Nbar) {
        return SubMonoidRepr::from_elements(c, &parse_elems(c, s)?);
    }
    let mut set = NbarSet::empty();
    for tok in split_top(s) {
        let part = if let Some(k) = tok.strip_suffix("..") {
            NbarSet::at_least(k.parse().map_err(|_| Error::InvalidElement(tok.into()))?)
        } else if let Some(d) = tok.strip_prefix('*') {
            NbarSet::multiples(d.parse().map_err(|_| Error::InvalidElement(tok.into()))?)
        } else {
            NbarSet::from_elements([tok.parse::<ExtNat>()?])
        };
        set = set.union(&part);
    }
    Ok(SubMonoidRepr::nbar(set))
}

/// A short human-readable rendering of a report.
pub fn render_text(r: &RunReport) -> String {
    let mut s = format!("cusg {}", r.command);
    if !r.input.is_empty() {
        s.push(' ');
        s.push_str(&r.input);
    }
    s.push_str(&format!(": {}\n", serde_json::to_value(r.status).expect("status")).replace('"', ""));
    if r.command == "selftest" {
        if let Some(lines) = r.result["criteria"].as_array() {
            for c in lines {
                s.push_str(&format!("  {}\n", c["line"].as_str().unwrap_or_default()));
            }
            return s;
        }
    }
    if let Value::Object(map) = &r.result {
        for (k, v) in map {
            let text = match v {
                Value::String(t) if t.contains('\n') => format!("\n{}", t.trim_end().lines().map(|l| format!("    {l}")).collect::<Vec<_>>().join("\n")),
                other => other.to_string(),
            };
            s.push_str(&format!("  {k}: {text}\n"));
        }
    }
    if let Some(t) = r.timing_ms {
        s.push_str(&format!("  timing_ms: {t}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> RunReport {
        let cli = Cli::try_parse_from(std::iter::once("cusg").chain(args.iter().copied())).unwrap();
        execute(&cli, Path::new(".")).unwrap()
    }

    #[test]
    fn dim_of_a_chain() {
        let r = run_args(&["dim", "chain:3", "--max", "1"]);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.result["dim"]["n"], 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_args(&["axioms", "chain:2", "--json"]).to_json();
        let b = run_args(&["axioms", "chain:2", "--json"]).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn nbar_closures() {
        let r = run_args(&["closure", "nbar", "--op", "sup", "--subset", "2,3", "--gens"]);
        assert_eq!(r.result["output"]["elements"], "{0,2,3,…,inf}");
        let r = run_args(&["closure", "nbar", "--op", "sub-cu", "--subset", "0,inf"]);
        assert_eq!(r.status, Status::Fails);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(main_with(["cusg", "frobnicate"]), USAGE_EXIT);
        assert_eq!(main_with(["cusg", "dim", "chain:x"]), USAGE_EXIT);
    }
}
