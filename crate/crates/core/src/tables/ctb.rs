//! The CTB line format.
//!
//! `TABLE` blocks are parsed here. Other keyword blocks (`SUBORBITS`, `DECOMP`,
//! `SYLOW`, `FUSIONPROBLEM`, `POWERPROBLEM`, `LEDGER`, `PARTIAL`) are kept as
//! tokenized [`RawBlock`]s for the owning module to interpret.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Signed;
use thiserror::Error;

use super::{
    Character, ClassFunction, ClassRecord, FusionMap, MapEntry, PartialClassMap, TableError,
    TableHead,
};
use crate::cyclonum::{BigInt, Cyclotomic};

pub const RAW_BLOCK_KEYWORDS: &[&str] = &[
    "SUBORBITS",
    "DECOMP",
    "SYLOW",
    "FUSIONPROBLEM",
    "POWERPROBLEM",
    "LEDGER",
    "PARTIAL",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CtbError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: table {table}: {source}")]
    Invariant {
        line: usize,
        table: String,
        #[source]
        source: TableError,
    },
}

impl CtbError {
    pub fn syntax(line: usize, message: impl Into<String>) -> Self {
        CtbError::Syntax {
            line,
            message: message.into(),
        }
    }

    pub fn line(&self) -> usize {
        match self {
            CtbError::Syntax { line, .. } | CtbError::Invariant { line, .. } => *line,
        }
    }
}

/// One table block: head, characters (irreducible or not) and the fusions it declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableBundle {
    pub head: TableHead,
    pub characters: Vec<Character>,
    pub fusions: Vec<FusionMap>,
}

impl TableBundle {
    pub fn irreducibles(&self) -> Vec<Character> {
        self.characters
            .iter()
            .filter(|c| c.claimed_irreducible)
            .cloned()
            .collect()
    }

    pub fn character(&self, name: &str) -> Option<&Character> {
        self.characters.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawLine {
    pub line: usize,
    pub tokens: Vec<String>,
}

impl RawLine {
    pub fn keyword(&self) -> &str {
        &self.tokens[0]
    }

    pub fn args(&self) -> &[String] {
        &self.tokens[1..]
    }

    pub fn error(&self, message: impl Into<String>) -> CtbError {
        CtbError::syntax(self.line, message)
    }

    pub fn arg(&self, i: usize) -> Result<&str, CtbError> {
        self.tokens
            .get(i + 1)
            .map(String::as_str)
            .ok_or_else(|| self.error(format!("{}: missing argument {}", self.keyword(), i + 1)))
    }

    pub fn arity(&self, n: usize) -> Result<(), CtbError> {
        if self.tokens.len() - 1 != n {
            return Err(self.error(format!(
                "{} expects {n} arguments, found {}",
                self.keyword(),
                self.tokens.len() - 1
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBlock {
    pub kind: String,
    pub name: String,
    pub line: usize,
    pub lines: Vec<RawLine>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CtbDocument {
    pub tables: Vec<TableBundle>,
    pub fusions: Vec<FusionMap>,
    pub orders: Vec<(String, BigInt)>,
    pub blocks: Vec<RawBlock>,
}

// Splits on whitespace, keeping `{a, b}` groups together.
fn tokenize(line: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in line.chars() {
        match ch {
            '{' => {
                depth += 1;
                cur.push(ch);
            }
            '}' => {
                if depth == 0 {
                    return Err("unbalanced '}'".into());
                }
                depth -= 1;
                cur.push(ch);
            }
            c if c.is_whitespace() => {
                if depth == 0 {
                    if !cur.is_empty() {
                        out.push(std::mem::take(&mut cur));
                    }
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced '{'".into());
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn lines_of(text: &str) -> Result<Vec<RawLine>, CtbError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(body).map_err(|m| CtbError::syntax(i + 1, m))?;
        if !tokens.is_empty() {
            out.push(RawLine {
                line: i + 1,
                tokens,
            });
        }
    }
    Ok(out)
}

pub fn parse_big(line: usize, s: &str) -> Result<BigInt, CtbError> {
    if !s.bytes().all(|b| b.is_ascii_digit() || b == b'-') {
        return Err(CtbError::syntax(line, format!("bad integer {s:?}")));
    }
    s.parse()
        .map_err(|_| CtbError::syntax(line, format!("bad integer {s:?}")))
}

pub fn parse_usize(line: usize, s: &str) -> Result<usize, CtbError> {
    s.parse()
        .map_err(|_| CtbError::syntax(line, format!("bad index {s:?}")))
}

pub fn parse_entry(line: usize, s: &str) -> Result<MapEntry, CtbError> {
    if s == "?" {
        return Ok(MapEntry::Unknown);
    }
    if let Some(inner) = s.strip_prefix('{').and_then(|x| x.strip_suffix('}')) {
        let mut set = BTreeSet::new();
        for part in inner.split(',') {
            let part = part.trim();
            set.insert(parse_usize(line, part)?);
        }
        return MapEntry::from_set(set)
            .ok_or_else(|| CtbError::syntax(line, "empty candidate set"));
    }
    Ok(MapEntry::Resolved(parse_usize(line, s)?))
}

pub fn parse_entries(line: usize, items: &[String]) -> Result<PartialClassMap, CtbError> {
    let entries = items
        .iter()
        .map(|s| parse_entry(line, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PartialClassMap::new(entries))
}

pub fn parse_value(line: usize, s: &str) -> Result<Cyclotomic, CtbError> {
    s.parse()
        .map_err(|e| CtbError::syntax(line, format!("{e}")))
}

// `FUSION <from> -> <to> <entries...>`
fn parse_fusion(l: &RawLine) -> Result<FusionMap, CtbError> {
    if l.tokens.len() < 4 || l.tokens[2] != "->" {
        return Err(l.error("FUSION expects: FUSION <from> -> <to> <entries>"));
    }
    Ok(FusionMap {
        from_head: l.tokens[1].clone(),
        to_head: l.tokens[3].clone(),
        entries: parse_entries(l.line, &l.tokens[4..])?,
    })
}

struct TableBuilder {
    id: String,
    start: usize,
    group_order: Option<BigInt>,
    nclasses: Option<usize>,
    classes: Vec<ClassRecord>,
    power_maps: BTreeMap<u64, PartialClassMap>,
    characters: Vec<(usize, Character)>,
    fusions: Vec<(usize, FusionMap)>,
}

impl TableBuilder {
    fn line(&mut self, l: &RawLine) -> Result<(), CtbError> {
        match l.keyword() {
            "GROUPORDER" => {
                l.arity(1)?;
                self.group_order = Some(parse_big(l.line, l.arg(0)?)?);
            }
            "NCLASSES" => {
                l.arity(1)?;
                self.nclasses = Some(parse_usize(l.line, l.arg(0)?)?);
            }
            "CLASS" => {
                l.arity(4)?;
                let idx = parse_usize(l.line, l.arg(0)?)?;
                if idx != self.classes.len() {
                    return Err(l.error(format!(
                        "CLASS index {idx} out of sequence, expected {}",
                        self.classes.len()
                    )));
                }
                let element_order = l
                    .arg(2)?
                    .parse()
                    .map_err(|_| l.error("bad element order"))?;
                self.classes.push(ClassRecord {
                    name: l.arg(1)?.to_string(),
                    element_order,
                    centralizer_order: parse_big(l.line, l.arg(3)?)?,
                });
            }
            "POWERMAP" => {
                let p: u64 = l.arg(0)?.parse().map_err(|_| l.error("bad prime"))?;
                let map = parse_entries(l.line, &l.tokens[2..])?;
                if self.power_maps.insert(p, map).is_some() {
                    return Err(l.error(format!("duplicate POWERMAP {p}")));
                }
            }
            "CHARACTER" | "CLASSFUNCTION" => {
                let name = l.arg(0)?.to_string();
                let values = l.tokens[2..]
                    .iter()
                    .map(|s| parse_value(l.line, s))
                    .collect::<Result<Vec<_>, _>>()?;
                self.characters.push((
                    l.line,
                    Character {
                        name,
                        function: ClassFunction::new(self.id.clone(), values),
                        claimed_irreducible: l.keyword() == "CHARACTER",
                    },
                ));
            }
            "FUSION" => {
                let f = parse_fusion(l)?;
                if f.from_head != self.id {
                    return Err(l.error(format!(
                        "FUSION inside TABLE {} must start from it",
                        self.id
                    )));
                }
                self.fusions.push((l.line, f));
            }
            other => return Err(l.error(format!("unexpected {other} inside TABLE"))),
        }
        Ok(())
    }

    fn finish(self, end_line: usize) -> Result<TableBundle, CtbError> {
        let group_order = self.group_order.ok_or_else(|| {
            CtbError::syntax(self.start, format!("TABLE {} has no GROUPORDER", self.id))
        })?;
        let n = self.classes.len();
        if let Some(k) = self.nclasses {
            if k != n {
                return Err(CtbError::syntax(
                    end_line,
                    format!("NCLASSES {k} but {n} CLASS lines"),
                ));
            }
        }
        let head = TableHead {
            id: self.id.clone(),
            group_order,
            classes: self.classes,
            power_maps: self.power_maps,
        };
        let invariant = |line: usize, source: TableError| CtbError::Invariant {
            line,
            table: head.id.clone(),
            source,
        };
        head.validate().map_err(|e| invariant(self.start, e))?;
        let mut characters = Vec::new();
        for (line, ch) in self.characters {
            if ch.function.values.len() != n {
                return Err(CtbError::syntax(
                    line,
                    format!(
                        "{} has {} values, expected {n}",
                        ch.name,
                        ch.function.values.len()
                    ),
                ));
            }
            match ch.function.values[0].as_integer() {
                Ok(d) if d.is_positive() => {}
                _ => {
                    return Err(CtbError::syntax(
                        line,
                        format!("{}: degree must be a positive integer", ch.name),
                    ))
                }
            }
            characters.push(ch);
        }
        let mut fusions = Vec::new();
        for (line, f) in self.fusions {
            if f.entries.len() != n {
                return Err(CtbError::syntax(
                    line,
                    format!("FUSION has {} entries, expected {n}", f.entries.len()),
                ));
            }
            fusions.push(f);
        }
        Ok(TableBundle {
            head,
            characters,
            fusions,
        })
    }
}

pub fn parse_document(text: &str) -> Result<CtbDocument, CtbError> {
    let lines = lines_of(text)?;
    let mut doc = CtbDocument::default();
    let mut i = 0;
    while i < lines.len() {
        let l = &lines[i];
        match l.keyword() {
            "TABLE" => {
                l.arity(1)?;
                let mut b = TableBuilder {
                    id: l.arg(0)?.to_string(),
                    start: l.line,
                    group_order: None,
                    nclasses: None,
                    classes: Vec::new(),
                    power_maps: BTreeMap::new(),
                    characters: Vec::new(),
                    fusions: Vec::new(),
                };
                i += 1;
                loop {
                    let Some(l) = lines.get(i) else {
                        return Err(CtbError::syntax(
                            b.start,
                            format!("TABLE {} not terminated by END", b.id),
                        ));
                    };
                    if l.keyword() == "END" {
                        doc.tables.push(b.finish(l.line)?);
                        break;
                    }
                    b.line(l)?;
                    i += 1;
                }
            }
            "FUSION" => doc.fusions.push(parse_fusion(l)?),
            "ORDER" => {
                l.arity(2)?;
                doc.orders
                    .push((l.arg(0)?.to_string(), parse_big(l.line, l.arg(1)?)?));
            }
            kw if RAW_BLOCK_KEYWORDS.contains(&kw) => {
                let mut block = RawBlock {
                    kind: kw.to_string(),
                    name: l.args().join(" "),
                    line: l.line,
                    lines: Vec::new(),
                };
                i += 1;
                loop {
                    let Some(l) = lines.get(i) else {
                        return Err(CtbError::syntax(
                            block.line,
                            format!("{} block not terminated by END", block.kind),
                        ));
                    };
                    if l.keyword() == "END" {
                        break;
                    }
                    block.lines.push(l.clone());
                    i += 1;
                }
                doc.blocks.push(block);
            }
            other => return Err(l.error(format!("unexpected keyword {other}"))),
        }
        i += 1;
    }
    Ok(doc)
}

/// Parses text holding exactly one `TABLE` block and nothing else.
pub fn parse_table(text: &str) -> Result<TableBundle, CtbError> {
    let mut doc = parse_document(text)?;
    if doc.tables.len() != 1
        || !doc.fusions.is_empty()
        || !doc.orders.is_empty()
        || !doc.blocks.is_empty()
    {
        return Err(CtbError::syntax(1, "expected exactly one TABLE block"));
    }
    Ok(doc.tables.pop().expect("one table"))
}

pub fn serialize_table(bundle: &TableBundle) -> String {
    let h = &bundle.head;
    let mut out = String::new();
    let _ = writeln!(out, "TABLE {}", h.id);
    let _ = writeln!(out, "GROUPORDER {}", h.group_order);
    let _ = writeln!(out, "NCLASSES {}", h.class_count());
    for (i, c) in h.classes.iter().enumerate() {
        let _ = writeln!(
            out,
            "CLASS {i} {} {} {}",
            c.name, c.element_order, c.centralizer_order
        );
    }
    for (p, map) in &h.power_maps {
        let _ = writeln!(out, "POWERMAP {p} {map}");
    }
    for ch in &bundle.characters {
        let kw = if ch.claimed_irreducible {
            "CHARACTER"
        } else {
            "CLASSFUNCTION"
        };
        let vals: Vec<String> = ch.function.values.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{kw} {} {}", ch.name, vals.join(" "));
    }
    for f in &bundle.fusions {
        let _ = writeln!(out, "FUSION {} -> {} {}", f.from_head, f.to_head, f.entries);
    }
    out.push_str("END\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: &str = "TABLE C2\nGROUPORDER 2\nNCLASSES 2\nCLASS 0 1a 1 2\nCLASS 1 2a 2 2\n\
                      POWERMAP 2 0 0\nCHARACTER 1a 1 1\nCHARACTER 1b 1 -1\nEND\n";

    #[test]
    fn parses_c2() {
        let b = parse_table(C2).unwrap();
        assert_eq!(b.head.class_count(), 2);
        assert_eq!(b.characters.len(), 2);
        assert_eq!(serialize_table(&b), C2);
        assert_eq!(parse_table(&serialize_table(&b)).unwrap(), b);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let bad = C2.replace("CLASS 1 2a 2 2", "CLASS 1 2a two 2");
        let err = parse_table(&bad).unwrap_err();
        assert_eq!(err.line(), 5);
        let bad = C2.replace("CHARACTER 1b 1 -1", "CHARACTER 1b 1 E(");
        assert_eq!(parse_table(&bad).unwrap_err().line(), 8);
        assert!(parse_table("TABLE X\nGROUPORDER 1\n").is_err());
    }

    #[test]
    fn invariant_errors_name_the_class() {
        let bad = C2.replace("CLASS 1 2a 2 2", "CLASS 1 2a 3 2");
        let err = parse_table(&bad).unwrap_err().to_string();
        assert!(err.contains("2a"), "{err}");
    }

    #[test]
    fn brace_groups_tokenize() {
        assert_eq!(
            tokenize("POWERMAP 2 0 {1, 2} ?").unwrap(),
            vec!["POWERMAP", "2", "0", "{1,2}", "?"]
        );
        assert_eq!(parse_entry(1, "{3}").unwrap(), MapEntry::Resolved(3));
    }
}
