//! Finite descriptors of increasing sequences and their suprema.

use super::{ext_of, Carrier, Elem, ExtNat};
use crate::error::{Error, Result};

/// An increasing sequence, described finitely.
///
/// Sequences are never given by callbacks, so equality of descriptors and
/// their suprema stay decidable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChainDescr {
    /// A finite list; the sequence stays at the last entry.
    Finite(Vec<Elem>),
    /// `prefix` followed by `value` forever.
    EventuallyConstant { prefix: Vec<Elem>, value: Elem },
    /// `start, start+step, start+2·step, ...` in N̄ or one of its
    /// sub-semigroups. Unbounded when `step > 0`.
    Arithmetic { start: u64, step: u64 },
    /// `base ∨ min(target, k)` for `k = 0, 1, ...`, pointwise on
    /// extended-natural coordinates.
    Truncation { base: Elem, target: Elem },
    /// One descriptor per summand of a direct sum.
    Componentwise(Vec<ChainDescr>),
}

fn ext_coords(c: &Carrier, x: &Elem) -> Option<Vec<ExtNat>> {
    match (c, x) {
        (Carrier::Nbar, Elem::Ext(e)) => Some(vec![*e]),
        (Carrier::Mono(_), Elem::Tuple(v)) => Some(v.iter().map(ext_of).collect()),
        _ => None,
    }
}

fn from_coords(c: &Carrier, v: Vec<ExtNat>) -> Elem {
    match c {
        Carrier::Nbar => Elem::Ext(v[0]),
        _ => Elem::Tuple(v.into_iter().map(Elem::Ext).collect()),
    }
}

impl ChainDescr {
    /// The `k`-th term. The descriptor must already be valid for `carrier`.
    pub fn term(&self, carrier: &Carrier, k: u64) -> Elem {
        match self {
            ChainDescr::Finite(v) => v[(k as usize).min(v.len() - 1)].clone(),
            ChainDescr::EventuallyConstant { prefix, value } => {
                prefix.get(k as usize).cloned().unwrap_or_else(|| value.clone())
            }
            ChainDescr::Arithmetic { start, step } => {
                Elem::Ext(ExtNat::Fin(*start).add(ExtNat::Fin(*step).scale(k)))
            }
            ChainDescr::Truncation { base, target } => {
                let b = ext_coords(carrier, base).expect("validated");
                let t = ext_coords(carrier, target).expect("validated");
                let v = b.iter().zip(&t).map(|(&b, &t)| b.max(t.min(ExtNat::Fin(k)))).collect();
                from_coords(carrier, v)
            }
            ChainDescr::Componentwise(ds) => match carrier {
                Carrier::Sum(cs) => Elem::Tuple(cs.iter().zip(ds).map(|(c, d)| d.term(c, k)).collect()),
                _ => panic!("componentwise chain on a non-sum carrier"),
            },
        }
    }

    /// Checks that the descriptor denotes an increasing sequence in `carrier`
    /// that the backend can take the supremum of.
    pub fn validate(&self, carrier: &Carrier) -> Result<()> {
        let no_limit = || Error::NoLimitForm(carrier.describe());
        match self {
            ChainDescr::Finite(v) | ChainDescr::EventuallyConstant { prefix: v, .. } => {
                let mut all: Vec<&Elem> = v.iter().collect();
                if let ChainDescr::EventuallyConstant { value, .. } = self {
                    all.push(value);
                }
                if all.is_empty() {
                    return Err(Error::InvalidParams("empty chain".into()));
                }
                for e in &all {
                    carrier.ensure(e)?;
                }
                if let Some(i) = all.windows(2).position(|w| !carrier.leq(w[0], w[1])) {
                    return Err(Error::NotIncreasing(i + 1));
                }
                Ok(())
            }
            ChainDescr::Arithmetic { start, step } => match carrier {
                Carrier::Nbar => Ok(()),
                Carrier::NbarSub(s) => {
                    // membership of an arithmetic progression is periodic past the threshold
                    let horizon = s.horizon() + 1;
                    for k in 0..=horizon {
                        let t = start + step * k;
                        if !s.contains_nat(t) {
                            return Err(Error::NotInCarrier(t.to_string()));
                        }
                        if *step == 0 {
                            break;
                        }
                    }
                    if *step > 0 && !s.has_inf() {
                        return Err(no_limit());
                    }
                    Ok(())
                }
                _ => Err(no_limit()),
            },
            ChainDescr::Truncation { base, target } => {
                if !matches!(carrier, Carrier::Nbar | Carrier::Mono(_)) {
                    return Err(no_limit());
                }
                carrier.ensure(base)?;
                carrier.ensure(target)
            }
            ChainDescr::Componentwise(ds) => match carrier {
                Carrier::Sum(cs) if cs.len() == ds.len() => cs.iter().zip(ds).try_for_each(|(c, d)| d.validate(c)),
                _ => Err(no_limit()),
            },
        }
    }

    /// The supremum, assuming the descriptor is valid.
    pub(crate) fn sup_unchecked(&self, carrier: &Carrier) -> Elem {
        match self {
            ChainDescr::Finite(v) => v.last().expect("validated").clone(),
            ChainDescr::EventuallyConstant { value, .. } => value.clone(),
            ChainDescr::Arithmetic { start, step } => {
                if *step == 0 {
                    Elem::nat(*start)
                } else {
                    Elem::INF
                }
            }
            ChainDescr::Truncation { base, target } => {
                let b = ext_coords(carrier, base).expect("validated");
                let t = ext_coords(carrier, target).expect("validated");
                from_coords(carrier, b.iter().zip(&t).map(|(&b, &t)| b.max(t)).collect())
            }
            ChainDescr::Componentwise(ds) => match carrier {
                Carrier::Sum(cs) => Elem::Tuple(cs.iter().zip(ds).map(|(c, d)| d.sup_unchecked(c)).collect()),
                _ => unreachable!(),
            },
        }
    }

    /// True when the sequence is eventually constant.
    pub fn is_bounded(&self, carrier: &Carrier) -> bool {
        match self {
            ChainDescr::Finite(_) | ChainDescr::EventuallyConstant { .. } => true,
            ChainDescr::Arithmetic { step, .. } => *step == 0,
            ChainDescr::Truncation { target, .. } => {
                ext_coords(carrier, target).is_some_and(|t| t.iter().all(|e| e.is_finite()))
            }
            ChainDescr::Componentwise(ds) => match carrier {
                Carrier::Sum(cs) => cs.iter().zip(ds).all(|(c, d)| d.is_bounded(c)),
                _ => false,
            },
        }
    }
}

impl Carrier {
    /// The canonical supremum of an increasing sequence.
    pub fn sup_chain(&self, chain: &ChainDescr) -> Result<Elem> {
        chain.validate(self)?;
        Ok(chain.sup_unchecked(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::direct_sum;

    #[test]
    fn unbounded_chain_in_nbar() {
        let s = Carrier::Nbar;
        assert_eq!(s.sup_chain(&ChainDescr::Arithmetic { start: 0, step: 1 }).unwrap(), Elem::INF);
    }

    #[test]
    fn eventually_constant_in_chain_table() {
        let s = Carrier::chain(3);
        let d = ChainDescr::EventuallyConstant { prefix: vec![Elem::Idx(1)], value: Elem::Idx(2) };
        assert_eq!(s.sup_chain(&d).unwrap(), Elem::Idx(2));
        let bad = ChainDescr::Finite(vec![Elem::Idx(2), Elem::Idx(1)]);
        assert_eq!(s.sup_chain(&bad), Err(Error::NotIncreasing(1)));
        assert!(matches!(s.sup_chain(&ChainDescr::Arithmetic { start: 0, step: 1 }), Err(Error::NoLimitForm(_))));
    }

    #[test]
    fn componentwise_sup_in_sum() {
        let s = direct_sum(&Carrier::Nbar, &Carrier::Nbar);
        let d = ChainDescr::Componentwise(vec![
            ChainDescr::Arithmetic { start: 1, step: 2 },
            ChainDescr::Finite(vec![Elem::nat(0), Elem::nat(4)]),
        ]);
        assert_eq!(s.sup_chain(&d).unwrap(), Elem::Tuple(vec![Elem::INF, Elem::nat(4)]));
        assert_eq!(d.term(&s, 3), Elem::Tuple(vec![Elem::nat(7), Elem::nat(4)]));
    }

    #[test]
    fn truncation_terms() {
        let d = ChainDescr::Truncation { base: Elem::nat(2), target: Elem::INF };
        assert_eq!(d.term(&Carrier::Nbar, 0), Elem::nat(2));
        assert_eq!(d.term(&Carrier::Nbar, 5), Elem::nat(5));
        assert_eq!(Carrier::Nbar.sup_chain(&d).unwrap(), Elem::INF);
    }
}
