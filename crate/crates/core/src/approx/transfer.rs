//! Properties that pass from the members of an approximating family to the
//! carrier they approximate.

use std::fmt;

use serde::Serialize;

use super::approximation::ApproxFamily;
use crate::axioms::{check_axiom, Axiom, Mode};
use crate::dimension::{check_dim_at_most, dim, DimBounds, DEFAULT_MAX_N};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferProperty {
    Axiom(Axiom),
    /// `dim ≤ n`, where `n` is the largest member dimension.
    Dim,
}

impl fmt::Display for TransferProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransferProperty::Axiom(a) => write!(f, "{a}"),
            TransferProperty::Dim => f.write_str("dim"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub property: String,
    pub members: Vec<String>,
    pub target: String,
    /// No violation of the transfer statement was found.
    pub holds: bool,
    /// Every verdict involved was exact.
    pub exact: bool,
}

/// Evaluates the property on every member and on the target with the same
/// bounds, then checks the implication "all members have it ⇒ the target
/// has it" (for `dim`: `dim(S) ≤ max dim(S_λ)`).
pub fn transfer_check(f: &ApproxFamily, prop: TransferProperty, fuel: u64, bounds: DimBounds) -> Result<TransferReport> {
    match prop {
        TransferProperty::Axiom(a) => {
            if !matches!(a, Axiom::O5 | Axiom::O6 | Axiom::O7 | Axiom::WeakCancellation) {
                return Err(Error::InvalidParams(format!("{a} is not a transferred property")));
            }
            let members = f
                .members
                .iter()
                .map(|m| check_axiom(&m.source, a, Mode::Direct, None, fuel).map(|v| v.verdict))
                .collect::<Result<Vec<_>>>()?;
            let target = check_axiom(&f.target, a, Mode::Direct, None, fuel)?.verdict;
            let premise = members.iter().all(|v| v.not_refuted());
            let exact = members.iter().chain([&target]).all(|v| !v.is_unknown());
            Ok(TransferReport {
                property: prop.to_string(),
                members: members.iter().map(|v| v.label()).collect(),
                target: target.label(),
                holds: !(premise && target.is_fail()),
                exact,
            })
        }
        TransferProperty::Dim => {
            let dims = f.members.iter().map(|m| dim(&m.source, DEFAULT_MAX_N, bounds)).collect::<Result<Vec<_>>>()?;
            let labels = dims.iter().map(|d| d.value().map_or(format!(">{DEFAULT_MAX_N}"), |n| n.to_string())).collect();
            let values: Option<Vec<usize>> = dims.iter().map(|d| d.value()).collect();
            let Some(n) = values.and_then(|v| v.into_iter().max()) else {
                // some member has no bounded dimension: nothing to transfer
                return Ok(TransferReport { property: prop.to_string(), members: labels, target: "-".into(), holds: true, exact: true });
            };
            let check = check_dim_at_most(&f.target, n, bounds, false)?;
            let exact = f.target.is_finite() && f.members.iter().all(|m| m.source.is_finite());
            Ok(TransferReport {
                property: format!("dim<={n}"),
                members: labels,
                target: serde_json::to_value(&check.outcome).map(|v| v["outcome"].to_string()).unwrap_or_default(),
                holds: !check.is_no(),
                exact,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::limit::{build_limit, ChainSystem};
    use super::super::QueryBounds;
    use super::*;

    #[test]
    fn limit_of_doubling_chains_transfers_everything() {
        let sys = ChainSystem::doubling_chains(3).unwrap();
        let (lim, _) = build_limit(&sys, QueryBounds { random: 0, ..Default::default() }).unwrap();
        let f = ApproxFamily::new(lim.carrier.clone(), lim.canonical.clone()).unwrap();
        for p in [Axiom::O5, Axiom::O6, Axiom::O7, Axiom::WeakCancellation].map(TransferProperty::Axiom).into_iter().chain([TransferProperty::Dim]) {
            let r = transfer_check(&f, p, 1000, DimBounds::default()).unwrap();
            assert!(r.holds && r.exact, "{r:?}");
        }
    }
}
