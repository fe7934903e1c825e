//! The `.ea` text format and its poset variant.
//!
//! ```text
//! # the three-element chain
//! elements: 3
//! names: 0 a 1
//! one: 1
//! sum: a a 1
//! ```
//!
//! Sums are unordered and `0 + x = x` is implied. Poset files use the same
//! header without `one:` and list `leq: a b` lines; the orthocomplement for
//! `construct from-oml` is given by `orth: a b` lines (`b` is `a⊥`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ealab_core::{EffectAlgebraTable, Element, Error as CoreError, Poset};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown element name `{name}`")]
    UnknownName { line: usize, name: String },
    #[error("line {line}: `{a} + {b}` is already `{first}`, cannot also be `{second}`")]
    ContradictorySum {
        line: usize,
        a: String,
        b: String,
        first: String,
        second: String,
    },
    #[error("{0}")]
    Invalid(CoreError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// A table together with the names of its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedTable {
    pub table: EffectAlgebraTable,
    pub names: Vec<String>,
}

impl NamedTable {
    /// Default names: `0`, `1` for the unit, `e<i>` otherwise.
    pub fn with_default_names(table: EffectAlgebraTable) -> Self {
        let names = table
            .elements()
            .map(|x| match x {
                0 => "0".to_string(),
                x if x == table.one() => "1".to_string(),
                x => format!("e{x}"),
            })
            .collect();
        Self { table, names }
    }

    pub fn name(&self, x: Element) -> &str {
        &self.names[x]
    }

    pub fn names_of(&self, xs: impl IntoIterator<Item = Element>) -> Vec<String> {
        xs.into_iter().map(|x| self.names[x].clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedPoset {
    pub poset: Poset,
    pub names: Vec<String>,
    /// Present when the file has `orth:` lines.
    pub orth: Option<Vec<Element>>,
}

/// `(line number, key, arguments)`.
type Line = (usize, String, Vec<String>);

struct Header {
    names: Vec<String>,
    index: BTreeMap<String, Element>,
}

impl Header {
    fn lookup(&self, line: usize, name: &str) -> Result<Element, FormatError> {
        self.index.get(name).copied().ok_or_else(|| FormatError::UnknownName {
            line,
            name: name.to_string(),
        })
    }
}

/// Splits into `(line number, key, args)` skipping blanks and comments, and
/// reads the `elements:` and `names:` header.
fn lines(text: &str) -> Result<(Header, Vec<Line>), FormatError> {
    let mut size = None;
    let mut names: Option<(usize, Vec<String>)> = None;
    let mut body = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| parse_err(line, format!("expected `key: value`, found `{content}`")))?;
        let args: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        match key.trim() {
            "elements" => {
                if size.is_some() {
                    return Err(parse_err(line, "duplicate `elements:` line"));
                }
                let [n] = args.as_slice() else {
                    return Err(parse_err(line, "`elements:` takes one number"));
                };
                size = Some((
                    line,
                    n.parse::<usize>()
                        .map_err(|e| parse_err(line, format!("bad element count: {e}")))?,
                ));
            }
            "names" => {
                if names.is_some() {
                    return Err(parse_err(line, "duplicate `names:` line"));
                }
                names = Some((line, args));
            }
            key => body.push((line, key.to_string(), args)),
        }
    }
    let (size_line, n) = size.ok_or_else(|| parse_err(text.lines().count().max(1), "missing `elements:` line"))?;
    let names = match names {
        Some((line, names)) => {
            if names.len() != n {
                return Err(parse_err(line, format!("{} names for {n} elements", names.len())));
            }
            names
        }
        None => return Err(parse_err(size_line, "missing `names:` line")),
    };
    let mut index = BTreeMap::new();
    for (x, name) in names.iter().enumerate() {
        if index.insert(name.clone(), x).is_some() {
            return Err(parse_err(size_line, format!("element name `{name}` declared twice")));
        }
    }
    Ok((Header { names, index }, body))
}

pub fn parse_ea(text: &str) -> Result<NamedTable, FormatError> {
    let (header, body) = lines(text)?;
    let n = header.names.len();
    let mut one = None;
    let mut cells: Vec<Option<Element>> = vec![None; n * n];
    for x in 0..n {
        cells[x] = Some(x);
        cells[x * n] = Some(x);
    }
    for (line, key, args) in &body {
        let line = *line;
        match key.as_str() {
            "one" => {
                if one.is_some() {
                    return Err(parse_err(line, "duplicate `one:` line"));
                }
                let [name] = args.as_slice() else {
                    return Err(parse_err(line, "`one:` takes one name"));
                };
                one = Some(header.lookup(line, name)?);
            }
            "sum" => {
                let [a, b, c] = args.as_slice() else {
                    return Err(parse_err(line, "`sum:` takes three names"));
                };
                let (a, b, c) = (
                    header.lookup(line, a)?,
                    header.lookup(line, b)?,
                    header.lookup(line, c)?,
                );
                for (x, y) in [(a, b), (b, a)] {
                    match cells[x * n + y] {
                        Some(old) if old != c => {
                            return Err(FormatError::ContradictorySum {
                                line,
                                a: header.names[x].clone(),
                                b: header.names[y].clone(),
                                first: header.names[old].clone(),
                                second: header.names[c].clone(),
                            })
                        }
                        _ => cells[x * n + y] = Some(c),
                    }
                }
            }
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        }
    }
    let one = one.ok_or_else(|| parse_err(text.lines().count().max(1), "missing `one:` line"))?;
    let table = EffectAlgebraTable::from_cells(n, one, cells).map_err(FormatError::Invalid)?;
    Ok(NamedTable {
        table,
        names: header.names,
    })
}

/// Canonical text: header, then one `sum:` line per defined sum `x + y` with
/// `0 < x <= y`, in index order.
pub fn serialize_ea(t: &NamedTable) -> String {
    let mut out = String::new();
    let table = &t.table;
    writeln!(out, "elements: {}", table.size()).unwrap();
    writeln!(out, "names: {}", t.names.join(" ")).unwrap();
    writeln!(out, "one: {}", t.name(table.one())).unwrap();
    for (x, y, z) in table.defined_sums().filter(|&(x, _, _)| x != 0) {
        writeln!(out, "sum: {} {} {}", t.name(x), t.name(y), t.name(z)).unwrap();
    }
    out
}

pub fn parse_poset(text: &str) -> Result<NamedPoset, FormatError> {
    let (header, body) = lines(text)?;
    let n = header.names.len();
    let mut pairs = Vec::new();
    let mut orth: Option<Vec<Option<Element>>> = None;
    let mut last_line = 1;
    for (line, key, args) in &body {
        let line = *line;
        last_line = line;
        let [a, b] = args.as_slice() else {
            return Err(parse_err(line, format!("`{key}:` takes two names")));
        };
        let (a, b) = (header.lookup(line, a)?, header.lookup(line, b)?);
        match key.as_str() {
            "leq" => pairs.push((a, b)),
            "orth" => {
                let o = orth.get_or_insert_with(|| vec![None; n]);
                for (x, y) in [(a, b), (b, a)] {
                    if o[x].is_some_and(|old| old != y) {
                        return Err(parse_err(
                            line,
                            format!("`{}` has two orthocomplements", header.names[x]),
                        ));
                    }
                    o[x] = Some(y);
                }
            }
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        }
    }
    let poset = Poset::from_relation(n, pairs).map_err(FormatError::Invalid)?;
    let orth = match orth {
        None => None,
        Some(o) => Some(
            o.into_iter()
                .enumerate()
                .map(|(x, y)| {
                    y.ok_or_else(|| parse_err(last_line, format!("no `orth:` line for `{}`", header.names[x])))
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Ok(NamedPoset {
        poset,
        names: header.names,
        orth,
    })
}

/// Covers as `leq:` lines, plus `orth:` lines when present.
pub fn serialize_poset(p: &NamedPoset) -> String {
    let mut out = String::new();
    writeln!(out, "elements: {}", p.poset.len()).unwrap();
    writeln!(out, "names: {}", p.names.join(" ")).unwrap();
    for (a, b) in p.poset.covers() {
        writeln!(out, "leq: {} {}", p.names[a], p.names[b]).unwrap();
    }
    if let Some(orth) = &p.orth {
        for (a, &b) in orth.iter().enumerate().filter(|&(a, &b)| a <= b) {
            writeln!(out, "orth: {} {}", p.names[a], p.names[b]).unwrap();
        }
    }
    out
}
