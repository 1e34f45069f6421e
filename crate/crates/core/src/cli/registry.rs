//! Catalog names accepted wherever a carrier is expected.

use std::path::Path;

use serde::Serialize;

use super::format::{parse_poset, parse_table};
use crate::carrier::{direct_sum, instantiate_catalog, CatalogId, Carrier, PosetDescr};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub description: &'static str,
}

pub fn registry() -> Vec<RegistryEntry> {
    vec![
        RegistryEntry { name: "nbar", description: "the extended naturals {0,1,...,inf}" },
        RegistryEntry { name: "chain:<m>", description: "{0..m} with addition saturating at m" },
        RegistryEntry { name: "sum:<a>+<b>[+...]", description: "direct sum of the named carriers" },
        RegistryEntry { name: "mono:antichain:<k>", description: "monotone maps from a k-element antichain into nbar" },
        RegistryEntry { name: "mono:chain:<k>", description: "monotone maps from a k-element chain into nbar" },
        RegistryEntry { name: "mono:<poset-file>", description: "monotone maps from a POSET v1 file into nbar" },
        RegistryEntry { name: "<table-file>", description: "a CUTABLE v1 file" },
    ]
}

fn count(name: &str, s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::InvalidParams(format!("`{s}` in `{name}` is not a number")))
}

/// Resolves a catalog name, or reads a table file. Relative file paths are
/// taken relative to `base`.
pub fn resolve(name: &str, base: &Path) -> Result<Carrier> {
    let name = name.trim();
    if name == "nbar" {
        return instantiate_catalog(&CatalogId::NbarOmega);
    }
    if let Some(m) = name.strip_prefix("chain:") {
        return instantiate_catalog(&CatalogId::SaturatingChain(count(name, m)?));
    }
    if let Some(rest) = name.strip_prefix("sum:") {
        let parts = rest.split('+').map(|p| resolve(p, base)).collect::<Result<Vec<_>>>()?;
        let mut it = parts.into_iter();
        let first = it.next().ok_or_else(|| Error::InvalidParams("empty sum".into()))?;
        return Ok(it.fold(first, |acc, c| direct_sum(&acc, &c)));
    }
    if let Some(rest) = name.strip_prefix("mono:") {
        let poset = if let Some(k) = rest.strip_prefix("antichain:") {
            PosetDescr::antichain(count(name, k)?)
        } else if let Some(k) = rest.strip_prefix("chain:") {
            PosetDescr::chain(count(name, k)?)
        } else {
            parse_poset(&std::fs::read_to_string(base.join(rest))?)?
        };
        return instantiate_catalog(&CatalogId::MonotoneMaps(poset));
    }
    let path = base.join(name);
    if !path.exists() {
        return Err(Error::InvalidParams(format!("`{name}` is neither a catalog name nor a file")));
    }
    Carrier::finite(parse_table(&std::fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        let here = Path::new(".");
        assert_eq!(resolve("chain:3", here).unwrap(), Carrier::chain(3));
        assert_eq!(resolve("nbar", here).unwrap(), Carrier::Nbar);
        let s = resolve("sum:chain:1+chain:2", here).unwrap();
        assert_eq!(s.table().unwrap().len(), 6);
        assert!(matches!(resolve("mono:antichain:2", here).unwrap(), Carrier::Mono(_)));
        assert!(resolve("chain:x", here).is_err());
        assert!(resolve("no-such-file.cutable", here).is_err());
    }
}
