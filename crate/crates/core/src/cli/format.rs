//! Text formats: `CUTABLE v1` tables, `CUMAP v1` maps, `POSET v1` posets
//! and `CUCHAIN v1` chain systems.
//!
//! Parsers report 1-based line and column positions. Serializers emit the
//! canonical layout, so `serialize(parse(t))` normalizes whitespace.

use crate::carrier::{FiniteCuTable, PosetDescr};
use crate::error::{Error, Result};

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Non-blank lines with their 1-based numbers. `#` starts a comment.
struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim_end()))
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        let last = text.lines().count().max(1);
        Lines { items, pos: 0, last }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let item = self.items.get(self.pos).copied().ok_or_else(|| err(self.last + 1, 1, format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(item)
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some((line, text)) => Err(err(line, column_of(text, text.trim()), "unexpected extra line")),
        }
    }
}

fn column_of(line: &str, token: &str) -> usize {
    let offset = token.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

fn header(lines: &mut Lines, expected: &str) -> Result<()> {
    let (n, text) = lines.next(expected)?;
    let t = text.trim();
    if t == expected {
        return Ok(());
    }
    let magic = expected.split_whitespace().next().unwrap_or(expected);
    if t.starts_with(magic) {
        Err(err(n, column_of(text, t) + magic.len() + 1, format!("unsupported version, expected `{expected}`")))
    } else {
        Err(err(n, column_of(text, t), format!("expected `{expected}`")))
    }
}

/// Parses `key=<value>` and returns the value with its column.
fn keyed<'a>(lines: &mut Lines<'a>, key: &str) -> Result<(usize, &'a str, &'a str)> {
    let (n, text) = lines.next(&format!("`{key}=`"))?;
    let t = text.trim_start();
    match t.strip_prefix(key).and_then(|r| r.strip_prefix('=')) {
        Some(v) => Ok((n, text, v.trim())),
        None => Err(err(n, column_of(text, t), format!("expected `{key}=`"))),
    }
}

fn number(line: usize, text: &str, token: &str) -> Result<usize> {
    token.parse().map_err(|_| err(line, column_of(text, token), format!("`{token}` is not a number")))
}

fn rows<T>(lines: &mut Lines, n: usize, what: &str, cell: impl Fn(usize, &str, &str) -> Result<T>) -> Result<Vec<Vec<T>>> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, text) = lines.next(what)?;
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != n {
            let col = toks.get(n).map_or(text.len() + 1, |t| column_of(text, t));
            return Err(err(ln, col, format!("{what} has {} entries, expected {n}", toks.len())));
        }
        out.push(toks.iter().map(|t| cell(ln, text, t)).collect::<Result<_>>()?);
    }
    // a further row of the same shape means the count was wrong
    if let Some((ln, text)) = lines.peek() {
        if !text.contains('=') && text.split_whitespace().count() == n && n > 0 {
            return Err(err(ln, column_of(text, text.trim()), format!("more than n={n} {what}s")));
        }
    }
    Ok(out)
}

fn bit(line: usize, text: &str, token: &str) -> Result<bool> {
    match token {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(err(line, column_of(text, token), format!("`{token}` is not 0 or 1"))),
    }
}

/// Parses a table and validates every positively-ordered-monoid law.
pub fn parse_table(text: &str) -> Result<FiniteCuTable> {
    let mut lines = Lines::new(text);
    header(&mut lines, "CUTABLE v1")?;
    let (ln, raw, v) = keyed(&mut lines, "n")?;
    let n = number(ln, raw, v)?;
    if n == 0 {
        return Err(err(ln, column_of(raw, v), "n must be positive"));
    }
    let (ln, raw, v) = keyed(&mut lines, "add")?;
    if !v.is_empty() {
        return Err(err(ln, column_of(raw, v), "rows start on the next line"));
    }
    let add = rows(&mut lines, n, "add row", |l, t, tok| {
        let v = number(l, t, tok)?;
        if v >= n {
            return Err(err(l, column_of(t, tok), format!("element {v} out of range 0..{n}")));
        }
        Ok(v)
    })?;
    let (ln, raw, v) = keyed(&mut lines, "leq")?;
    if !v.is_empty() {
        return Err(err(ln, column_of(raw, v), "rows start on the next line"));
    }
    let leq = rows(&mut lines, n, "leq row", bit)?;
    lines.expect_end()?;
    FiniteCuTable::new(add, leq)?.validated()
}

pub fn serialize_table(t: &FiniteCuTable) -> String {
    let mut s = format!("CUTABLE v1\nn={}\nadd=\n", t.len());
    for row in t.add_rows() {
        s.push_str(&row.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s.push_str("leq=\n");
    for row in t.leq_rows() {
        s.push_str(&row.iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_poset(text: &str) -> Result<PosetDescr> {
    let mut lines = Lines::new(text);
    header(&mut lines, "POSET v1")?;
    let (ln, raw, v) = keyed(&mut lines, "n")?;
    let n = number(ln, raw, v)?;
    keyed(&mut lines, "leq")?;
    let leq = rows(&mut lines, n, "leq row", bit)?;
    lines.expect_end()?;
    PosetDescr::new(leq)
}

pub fn serialize_poset(p: &PosetDescr) -> String {
    let mut s = format!("POSET v1\nn={}\nleq=\n", p.len());
    for row in p.rows() {
        s.push_str(&row.iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s
}

/// A parsed map file: pairs of source index and target element text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFile {
    pub entries: Vec<(usize, String)>,
}

pub fn parse_map(text: &str) -> Result<MapFile> {
    let mut lines = Lines::new(text);
    header(&mut lines, "CUMAP v1")?;
    let mut entries = Vec::new();
    while let Some((ln, raw)) = lines.peek() {
        lines.pos += 1;
        let (lhs, rhs) = parse_arrow(ln, raw, raw)?;
        let i = number(ln, raw, lhs)?;
        if entries.iter().any(|(j, _)| *j == i) {
            return Err(err(ln, column_of(raw, lhs), format!("element {i} is mapped twice")));
        }
        entries.push((i, rhs.to_string()));
    }
    entries.sort();
    Ok(MapFile { entries })
}

fn parse_arrow<'a>(ln: usize, raw: &'a str, part: &'a str) -> Result<(&'a str, &'a str)> {
    let Some((l, r)) = part.split_once("->") else {
        return Err(err(ln, column_of(raw, part.trim_start()), "expected `i -> j`"));
    };
    let (l, r) = (l.trim(), r.trim());
    if l.is_empty() || r.is_empty() {
        return Err(err(ln, column_of(raw, part.trim_start()), "expected `i -> j`"));
    }
    Ok((l, r))
}

pub fn serialize_map(m: &MapFile) -> String {
    let mut s = String::from("CUMAP v1\n");
    for (i, j) in &m.entries {
        s.push_str(&format!("{i} -> {j}\n"));
    }
    s
}

/// One connecting map of a chain file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainMap {
    Identity,
    Entries(MapFile),
}

/// A parsed chain file: stage names (catalog names or table paths) and the
/// maps between consecutive stages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFile {
    pub stages: Vec<String>,
    pub maps: Vec<ChainMap>,
}

/// `CUCHAIN v1`, then `stage=<name>` lines and `map=<i->j, …|identity>`
/// lines, one map between each pair of consecutive stages.
pub fn parse_chain(text: &str) -> Result<ChainFile> {
    let mut lines = Lines::new(text);
    header(&mut lines, "CUCHAIN v1")?;
    let mut stages = Vec::new();
    let mut maps = Vec::new();
    while let Some((ln, raw)) = lines.peek() {
        let t = raw.trim_start();
        if let Some(v) = t.strip_prefix("stage=") {
            lines.pos += 1;
            if !stages.is_empty() && maps.len() != stages.len() {
                return Err(err(ln, column_of(raw, t), "a map must separate consecutive stages"));
            }
            stages.push(v.trim().to_string());
        } else if let Some(v) = t.strip_prefix("map=") {
            lines.pos += 1;
            if maps.len() + 1 != stages.len() {
                return Err(err(ln, column_of(raw, t), "a map must follow a stage"));
            }
            let v = v.trim();
            if v == "identity" {
                maps.push(ChainMap::Identity);
                continue;
            }
            let mut entries = Vec::new();
            for part in v.split(',') {
                let (l, r) = parse_arrow(ln, raw, part)?;
                entries.push((number(ln, raw, l)?, r.to_string()));
            }
            entries.sort();
            maps.push(ChainMap::Entries(MapFile { entries }));
        } else {
            return Err(err(ln, column_of(raw, t), "expected `stage=` or `map=`"));
        }
    }
    if stages.is_empty() {
        return Err(err(lines.last + 1, 1, "a chain needs at least one stage"));
    }
    if maps.len() + 1 != stages.len() {
        return Err(err(lines.last + 1, 1, "the last stage has a dangling map"));
    }
    Ok(ChainFile { stages, maps })
}

pub fn serialize_chain(c: &ChainFile) -> String {
    let mut s = String::from("CUCHAIN v1\n");
    for (i, st) in c.stages.iter().enumerate() {
        s.push_str(&format!("stage={st}\n"));
        if let Some(m) = c.maps.get(i) {
            match m {
                ChainMap::Identity => s.push_str("map=identity\n"),
                ChainMap::Entries(f) => {
                    let parts: Vec<String> = f.entries.iter().map(|(i, j)| format!("{i}->{j}")).collect();
                    s.push_str(&format!("map={}\n", parts.join(", ")));
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const C3: &str = "CUTABLE v1\nn=4\nadd=\n0 1 2 3\n1 2 3 3\n2 3 3 3\n3 3 3 3\nleq=\n1 1 1 1\n0 1 1 1\n0 0 1 1\n0 0 0 1\n";

    #[test]
    fn chain_document_round_trips() {
        let t = parse_table(C3).unwrap();
        assert_eq!(t, FiniteCuTable::saturating_chain(3));
        assert_eq!(serialize_table(&t), C3);
        let messy = C3.replace("0 1 2 3\n", "0   1 2 3   \n").replace("n=4", "n=4  # four elements");
        assert_eq!(serialize_table(&parse_table(&messy).unwrap()), C3);
    }

    #[test]
    fn extra_row_is_a_dimension_error() {
        let doc = "CUTABLE v1\nn=2\nadd=\n0 1\n1 1\n1 1\nleq=\n1 1\n0 1\n";
        match parse_table(doc) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn positions_are_reported() {
        let bad = C3.replace("1 2 3 3", "1 x 3 3");
        assert_eq!(
            parse_table(&bad),
            Err(Error::Parse { line: 5, column: 3, message: "`x` is not a number".into() })
        );
        assert!(matches!(parse_table(&C3.replace("v1", "v2")), Err(Error::Parse { line: 1, column: 9, .. })));
    }

    #[test]
    fn maps_and_chains_round_trip() {
        let m = parse_map("CUMAP v1\n1 -> 2\n0 -> 0\n").unwrap();
        assert_eq!(m.entries, vec![(0, "0".into()), (1, "2".into())]);
        assert_eq!(parse_map(&serialize_map(&m)).unwrap(), m);
        let c = parse_chain("CUCHAIN v1\nstage=chain:1\nmap=0->0, 1->2\nstage=chain:2\nmap=identity\nstage=chain:2\n").unwrap();
        assert_eq!(c.stages.len(), 3);
        assert_eq!(parse_chain(&serialize_chain(&c)).unwrap(), c);
    }

    #[test]
    fn posets_round_trip() {
        let p = PosetDescr::antichain(2);
        assert_eq!(parse_poset(&serialize_poset(&p)).unwrap(), p);
    }
}
