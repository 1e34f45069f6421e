//! Verdicts with replayable witnesses, and the fuel budget shared by every
//! bounded search.

use std::cell::Cell;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::carrier::Elem;

/// Named elements in the order the check introduced them.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness(pub Vec<(String, Elem)>);

impl Witness {
    pub fn new() -> Self {
        Witness(Vec::new())
    }

    pub fn with(mut self, name: impl Into<String>, e: Elem) -> Self {
        self.0.push((name.into(), e));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Elem> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn elems(&self) -> impl Iterator<Item = &Elem> {
        self.0.iter().map(|(_, e)| e)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}={e}")?;
        }
        Ok(())
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (n, e) in &self.0 {
            m.serialize_entry(n, e)?;
        }
        m.end()
    }
}

/// Outcome of a decision procedure.
///
/// `Unknown` means no counterexample was found before the fuel ran out; it
/// records how far the search got ("holds up to fuel").
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails { witness: Witness },
    Unknown { fuel: u64, level: u64 },
}

impl Verdict {
    pub fn fails(witness: Witness) -> Self {
        Verdict::Fails { witness }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    /// Not refuted: either holds or holds up to fuel.
    pub fn not_refuted(&self) -> bool {
        !self.is_fail()
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails { witness } => Some(witness),
            _ => None,
        }
    }

    /// Short label used in text output.
    pub fn label(&self) -> String {
        match self {
            Verdict::Holds => "holds".into(),
            Verdict::Fails { witness } => format!("fails [{witness}]"),
            Verdict::Unknown { fuel, level } => format!("holds up to fuel {fuel} (level {level})"),
        }
    }
}

/// A countdown of elementary steps.
#[derive(Clone, Debug)]
pub struct Budget {
    pub fuel: u64,
    spent: Cell<u64>,
}

impl Budget {
    pub fn new(fuel: u64) -> Self {
        Budget { fuel, spent: Cell::new(0) }
    }

    /// Takes `n` steps if they fit.
    pub fn spend(&self, n: u64) -> bool {
        let spent = self.spent.get();
        if spent.saturating_add(n) > self.fuel {
            self.spent.set(self.fuel);
            false
        } else {
            self.spent.set(spent + n);
            true
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent.get()
    }

    pub fn exhausted(&self) -> bool {
        self.spent.get() >= self.fuel
    }
}

/// Result of one level of a fragment search.
pub(crate) enum Level {
    Done,
    Failed(Witness),
    OutOfFuel,
}

/// Runs `step` on levels 1, 2, ... of a carrier's fragments.
///
/// A finite carrier is searched once without a fuel limit and the answer is
/// exact. Otherwise levels run until the budget is gone; with no
/// counterexample the verdict is `Unknown` with the last completed level.
pub(crate) fn search_levels(finite: bool, fuel: u64, mut step: impl FnMut(u64, &Budget) -> Level) -> Verdict {
    if finite {
        let b = Budget::new(u64::MAX);
        return match step(1, &b) {
            Level::Failed(w) => Verdict::fails(w),
            _ => Verdict::Holds,
        };
    }
    let budget = Budget::new(fuel);
    let mut completed = 0;
    for level in 1..=MAX_LEVEL {
        match step(level, &budget) {
            Level::Failed(w) => return Verdict::fails(w),
            Level::OutOfFuel => break,
            Level::Done => completed = level,
        }
        if budget.exhausted() {
            break;
        }
    }
    Verdict::Unknown { fuel, level: completed }
}

const MAX_LEVEL: u64 = 4096;
