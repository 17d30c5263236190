//! Filling unknown character values: defect-zero vanishing, congruences with
//! the values at p-th powers under the centralizer bound, constituent solving
//! on a subgroup, and the orthogonality back-solve for a last unknown.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{prime_divisors_u64, valuation};
use crate::charfun::{scalar_product, CharFunError};
use crate::cyclonum::{sum_values, BigInt, BigRat, Cyclotomic};
use crate::linalg::echelon;
use crate::tables::{
    parse_value, Character, ClassFunction, CtbError, FusionMap, RawBlock, TableHead, TableLibrary,
};

/// Congruence candidate sets larger than this are not recorded.
pub const MAX_RECORDED_CANDIDATES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("{character} lives on {found}, expected {expected}")]
    HeadMismatch {
        character: String,
        expected: String,
        found: String,
    },
    #[error("{character} has {found} entries, head has {expected} classes")]
    Length {
        character: String,
        expected: usize,
        found: usize,
    },
    #[error("the degree of {0} must be known")]
    UnknownDegree(String),
    #[error("{character}: no value at {class} is compatible with {reason}")]
    NoCandidate {
        character: String,
        class: String,
        reason: String,
    },
    #[error("{character}: rule {rule} needs {value} at {class}, but the known value is {known}")]
    Conflict {
        character: String,
        class: String,
        rule: Rule,
        value: String,
        known: String,
    },
    #[error("{character}: orthogonality needs exactly one unknown entry, found {found}")]
    UnknownCount { character: String, found: usize },
    #[error("{character}: back-solved value {value} at {class} is not an algebraic integer")]
    NotIntegral {
        character: String,
        class: String,
        value: String,
    },
    #[error("constituent matrix on the known classes has rank {rank}, {needed} needed")]
    RankDeficient { rank: usize, needed: usize },
    #[error("known values do not decompose into the candidate constituents with nonnegative integer multiplicities")]
    NoDecomposition,
    #[error(transparent)]
    CharFun(#[from] CharFunError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    DefectZero,
    Congruence,
    Constituent,
    Orthogonality,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::DefectZero => "defect-zero",
            Rule::Congruence => "congruence",
            Rule::Constituent => "constituent",
            Rule::Orthogonality => "orthogonality",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventKind {
    Filled(Cyclotomic),
    /// Remaining integer candidates, ascending.
    Narrowed(Vec<BigInt>),
    /// A value was produced but violates the strict centralizer bound.
    Suspicious(Cyclotomic),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillEvent {
    pub rule: Rule,
    /// `None` for whole-character notes.
    pub class: Option<usize>,
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialCharacter {
    pub name: String,
    pub head_id: String,
    pub values: Vec<Option<Cyclotomic>>,
    /// Integer candidate sets recorded by the congruence rule for unknown classes.
    pub candidates: BTreeMap<usize, Vec<BigInt>>,
}

impl PartialCharacter {
    pub fn from_character(chi: &Character) -> Self {
        PartialCharacter {
            name: chi.name.clone(),
            head_id: chi.function.head_id.clone(),
            values: chi.values().iter().cloned().map(Some).collect(),
            candidates: BTreeMap::new(),
        }
    }

    /// Copy of `chi` with the listed classes unknown.
    pub fn blanked(chi: &Character, classes: &[usize]) -> Self {
        let mut p = Self::from_character(chi);
        for &c in classes {
            p.values[c] = None;
        }
        p
    }

    pub fn unknown_classes(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&c| self.values[c].is_none())
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn to_class_function(&self) -> Option<ClassFunction> {
        let values: Option<Vec<Cyclotomic>> = self.values.iter().cloned().collect();
        Some(ClassFunction::new(self.head_id.clone(), values?))
    }

    fn check(&self, head: &TableHead) -> Result<(), CompletionError> {
        if self.head_id != head.id {
            return Err(CompletionError::HeadMismatch {
                character: self.name.clone(),
                expected: head.id.clone(),
                found: self.head_id.clone(),
            });
        }
        if self.values.len() != head.class_count() {
            return Err(CompletionError::Length {
                character: self.name.clone(),
                expected: head.class_count(),
                found: self.values.len(),
            });
        }
        if self.values[0].is_none() {
            return Err(CompletionError::UnknownDegree(self.name.clone()));
        }
        Ok(())
    }

    fn degree_integer(&self) -> Option<BigInt> {
        self.values[0]
            .as_ref()?
            .as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    fn set(
        &mut self,
        head: &TableHead,
        c: usize,
        v: Cyclotomic,
        rule: Rule,
    ) -> Result<bool, CompletionError> {
        match &self.values[c] {
            Some(known) if *known == v => Ok(false),
            Some(known) => Err(CompletionError::Conflict {
                character: self.name.clone(),
                class: head.classes[c].name.clone(),
                rule,
                value: v.to_string(),
                known: known.to_string(),
            }),
            None => {
                self.values[c] = Some(v);
                self.candidates.remove(&c);
                Ok(true)
            }
        }
    }
}

type Filled = (PartialCharacter, Vec<FillEvent>);

/// Zeros on `p`-singular classes when the degree carries the full `p`-part of `|G|`.
pub fn defect_zero_fill(
    chi: &PartialCharacter,
    head: &TableHead,
    p: u64,
) -> Result<Filled, CompletionError> {
    chi.check(head)?;
    let mut out = chi.clone();
    let mut events = Vec::new();
    let order_part = valuation(&head.group_order, p);
    let applies = match (order_part, out.degree_integer()) {
        (0, _) => Err(format!("{p} does not divide the group order")),
        (_, None) => Err("degree is not a rational integer".to_string()),
        (k, Some(d)) if valuation(&d, p) == k => Ok(()),
        (k, Some(d)) => Err(format!(
            "degree has {p}-part {p}^{} < {p}^{k}",
            valuation(&d, p)
        )),
    };
    if let Err(why) = applies {
        events.push(FillEvent {
            rule: Rule::DefectZero,
            class: None,
            kind: EventKind::Skipped(why),
        });
        return Ok((out, events));
    }
    for c in 0..head.class_count() {
        if head.order(c) % p == 0 && out.set(head, c, Cyclotomic::zero(), Rule::DefectZero)? {
            events.push(FillEvent {
                rule: Rule::DefectZero,
                class: Some(c),
                kind: EventKind::Filled(Cyclotomic::zero()),
            });
        }
    }
    Ok((out, events))
}

fn rational_integer(v: &Cyclotomic) -> Option<BigInt> {
    v.as_rational()
        .filter(|q| q.is_integer())
        .map(|q| q.to_integer())
}

// Integers v with v ≡ r (mod m) and v² < bound, or None when there are too many.
fn residues_below(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Vec<BigInt>> {
    if !bound.is_positive() {
        return Some(Vec::new());
    }
    let limit = (bound - BigInt::one()).sqrt();
    let count = (BigInt::from(2) * &limit + BigInt::one()) / m + BigInt::one();
    if count > BigInt::from(MAX_RECORDED_CANDIDATES) {
        return None;
    }
    let mut v = -&limit + (r - -&limit).mod_floor(m);
    let mut out = Vec::new();
    while v <= limit {
        out.push(v.clone());
        v += m;
    }
    Some(out)
}

/// Congruences `χ(g) ≡ χ(g^p) (mod p)` intersected with `χ(g)² < |C(g)|`, on rational classes.
pub fn congruence_fill(
    chi: &PartialCharacter,
    head: &TableHead,
) -> Result<Filled, CompletionError> {
    chi.check(head)?;
    let mut out = chi.clone();
    let mut events = Vec::new();
    loop {
        let mut progress = false;
        for c in out.unknown_classes() {
            if head.is_rational_class(c) != Some(true) {
                continue;
            }
            // χ(g) ≡ χ(g^p) mod p for every p | |g|; combine by CRT
            let mut modulus = BigInt::one();
            let mut residue = BigInt::zero();
            for p in prime_divisors_u64(head.order(c)) {
                let Some(img) = head.power_map(p).and_then(|m| m.resolved(c)) else {
                    continue;
                };
                let Some(w) = out.values[img].as_ref().and_then(rational_integer) else {
                    continue;
                };
                let bp = BigInt::from(p);
                let w = w.mod_floor(&bp);
                // residue + modulus·t ≡ w (mod p)
                let inv = modulus.modpow(&(&bp - BigInt::from(2)), &bp);
                let t = ((&w - &residue) * inv).mod_floor(&bp);
                residue += &modulus * t;
                modulus *= &bp;
            }
            if modulus.is_one() {
                continue;
            }
            match residues_below(&residue, &modulus, head.centralizer(c)) {
                Some(vs) if vs.is_empty() => {
                    return Err(CompletionError::NoCandidate {
                        character: out.name.clone(),
                        class: head.classes[c].name.clone(),
                        reason: format!(
                            "v ≡ {residue} mod {modulus} and v² < {}",
                            head.centralizer(c)
                        ),
                    })
                }
                Some(vs) if vs.len() == 1 => {
                    let v = Cyclotomic::from(vs[0].clone());
                    out.set(head, c, v.clone(), Rule::Congruence)?;
                    events.push(FillEvent {
                        rule: Rule::Congruence,
                        class: Some(c),
                        kind: EventKind::Filled(v),
                    });
                    progress = true;
                }
                Some(vs) => {
                    if out.candidates.get(&c) != Some(&vs) {
                        out.candidates.insert(c, vs.clone());
                        events.push(FillEvent {
                            rule: Rule::Congruence,
                            class: Some(c),
                            kind: EventKind::Narrowed(vs),
                        });
                    }
                }
                None => {}
            }
        }
        if !progress {
            return Ok((out, events));
        }
    }
}

/// Solves `Σ |c| χ(c) = 0` for a single unknown entry.
pub fn orthogonality_fill(
    chi: &PartialCharacter,
    head: &TableHead,
) -> Result<Filled, CompletionError> {
    chi.check(head)?;
    let unknown = chi.unknown_classes();
    if unknown.is_empty() {
        return Ok((chi.clone(), Vec::new()));
    }
    if unknown.len() != 1 {
        return Err(CompletionError::UnknownCount {
            character: chi.name.clone(),
            found: unknown.len(),
        });
    }
    let c = unknown[0];
    let sizes = head.class_sizes();
    let terms: Vec<Cyclotomic> = (0..head.class_count())
        .filter(|&k| k != c)
        .map(|k| {
            chi.values[k]
                .as_ref()
                .expect("known")
                .scale(&BigRat::from_integer(sizes[k].clone()))
        })
        .collect();
    let total = sum_values(terms.iter());
    let v = -total.scale(&BigRat::new(BigInt::one(), sizes[c].clone()));
    if !v.is_algebraic_integer() {
        return Err(CompletionError::NotIntegral {
            character: chi.name.clone(),
            class: head.classes[c].name.clone(),
            value: v.to_string(),
        });
    }
    let mut out = chi.clone();
    out.set(head, c, v.clone(), Rule::Orthogonality)?;
    let mut events = vec![FillEvent {
        rule: Rule::Orthogonality,
        class: Some(c),
        kind: EventKind::Filled(v.clone()),
    }];
    if let Some(q) = v.as_rational() {
        if &q * &q >= BigRat::from_integer(head.centralizer(c).clone()) {
            events.push(FillEvent {
                rule: Rule::Orthogonality,
                class: Some(c),
                kind: EventKind::Suspicious(v),
            });
        }
    }
    Ok((out, events))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstituentSolution {
    pub multiplicities: Vec<BigInt>,
    pub restriction: ClassFunction,
    pub rank: usize,
}

/// The unique nonnegative integer combination of `irr` matching `restricted` on its known classes.
pub fn constituent_fill(
    restricted: &PartialCharacter,
    head: &TableHead,
    irr: &[Character],
) -> Result<ConstituentSolution, CompletionError> {
    restricted.check(head)?;
    let known: Vec<usize> = (0..head.class_count())
        .filter(|&c| restricted.values[c].is_some())
        .collect();
    let mut conductor = 1u64;
    for &c in &known {
        conductor = conductor.lcm(&restricted.values[c].as_ref().expect("known").conductor());
        for psi in irr {
            conductor = conductor.lcm(&psi.values()[c].conductor());
        }
    }
    let n = irr.len();
    let mut rows = Vec::new();
    for &c in &known {
        let cols: Vec<Vec<BigRat>> = irr
            .iter()
            .map(|psi| psi.values()[c].coords_in(conductor))
            .collect();
        let rhs = restricted.values[c]
            .as_ref()
            .expect("known")
            .coords_in(conductor);
        for (t, b) in rhs.into_iter().enumerate() {
            let mut row: Vec<BigRat> = cols.iter().map(|col| col[t].clone()).collect();
            row.push(b);
            rows.push(row);
        }
    }
    let ech = echelon(rows, n);
    if ech.rank() < n {
        return Err(CompletionError::RankDeficient {
            rank: ech.rank(),
            needed: n,
        });
    }
    if !ech.consistent {
        return Err(CompletionError::NoDecomposition);
    }
    let mut m = vec![BigInt::zero(); n];
    for (row, &pv) in ech.rows.iter().zip(&ech.pivots) {
        let x = &row[n];
        if !x.is_integer() || x.is_negative() {
            return Err(CompletionError::NoDecomposition);
        }
        m[pv] = x.to_integer();
    }
    let mut total = ClassFunction::new(
        head.id.clone(),
        vec![Cyclotomic::zero(); head.class_count()],
    );
    for (psi, k) in irr.iter().zip(&m) {
        if !k.is_zero() {
            total = total.add(&psi.function.scale_int(k));
        }
    }
    Ok(ConstituentSolution {
        multiplicities: m,
        restriction: total,
        rank: ech.rank(),
    })
}

/// Pushes subgroup values to the classes of `chi` they fuse into.
pub fn lift(
    chi: &PartialCharacter,
    head: &TableHead,
    restriction: &ClassFunction,
    fus: &FusionMap,
) -> Result<Filled, CompletionError> {
    chi.check(head)?;
    let mut out = chi.clone();
    let mut events = Vec::new();
    for (h, v) in restriction.values.iter().enumerate() {
        let Some(g) = fus.entries.resolved(h) else {
            continue;
        };
        if out.set(head, g, v.clone(), Rule::Constituent)? {
            events.push(FillEvent {
                rule: Rule::Constituent,
                class: Some(g),
                kind: EventKind::Filled(v.clone()),
            });
        }
    }
    Ok((out, events))
}

/// Restriction of a partial character along a fusion; unknown where the image is unknown.
pub fn restrict_partial(
    chi: &PartialCharacter,
    sub: &TableHead,
    fus: &FusionMap,
) -> PartialCharacter {
    PartialCharacter {
        name: format!("{}|{}", chi.name, sub.id),
        head_id: sub.id.clone(),
        values: (0..sub.class_count())
            .map(|h| fus.entries.resolved(h).and_then(|g| chi.values[g].clone()))
            .collect(),
        candidates: BTreeMap::new(),
    }
}

/// A subgroup whose irreducible constituents are known, with its fusion into the big head.
pub struct ConstituentSource<'a> {
    pub head: &'a TableHead,
    pub fusion: &'a FusionMap,
    pub irreducibles: &'a [Character],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub character: PartialCharacter,
    pub events: Vec<FillEvent>,
    /// Multiplicities found for each constituent source, in input order.
    pub decompositions: Vec<Vec<BigInt>>,
}

impl PipelineResult {
    /// Class → rule that filled it.
    pub fn attribution(&self) -> BTreeMap<usize, Rule> {
        let mut out = BTreeMap::new();
        for e in &self.events {
            if let (Some(c), EventKind::Filled(_)) = (e.class, &e.kind) {
                out.entry(c).or_insert(e.rule);
            }
        }
        out
    }
}

/// Defect-zero for every prime, then congruence, constituent solving and
/// congruence again, and orthogonality for a single remaining unknown.
/// The last step runs only for a character known to be orthogonal to the trivial one.
pub fn complete_character(
    chi: &PartialCharacter,
    head: &TableHead,
    sources: &[ConstituentSource<'_>],
    orthogonal_to_trivial: bool,
) -> Result<PipelineResult, CompletionError> {
    chi.check(head)?;
    let mut cur = chi.clone();
    let mut events = Vec::new();
    let order_primes: Vec<u64> = {
        let mut ps: Vec<u64> = Vec::new();
        for c in 0..head.class_count() {
            for p in prime_divisors_u64(head.order(c)) {
                if !ps.contains(&p) {
                    ps.push(p);
                }
            }
        }
        ps.sort_unstable();
        ps
    };
    for p in order_primes {
        let (next, ev) = defect_zero_fill(&cur, head, p)?;
        cur = next;
        events.extend(
            ev.into_iter()
                .filter(|e| !matches!(e.kind, EventKind::Skipped(_))),
        );
    }
    let (next, ev) = congruence_fill(&cur, head)?;
    cur = next;
    events.extend(ev);
    let mut decompositions = Vec::new();
    for s in sources {
        let res = restrict_partial(&cur, s.head, s.fusion);
        let sol = constituent_fill(&res, s.head, s.irreducibles)?;
        let (next, ev) = lift(&cur, head, &sol.restriction, s.fusion)?;
        cur = next;
        events.extend(ev);
        decompositions.push(sol.multiplicities);
    }
    if !sources.is_empty() {
        let (next, ev) = congruence_fill(&cur, head)?;
        cur = next;
        events.extend(ev);
    }
    if orthogonal_to_trivial && cur.unknown_classes().len() == 1 {
        let (next, ev) = orthogonality_fill(&cur, head)?;
        cur = next;
        events.extend(ev);
    }
    Ok(PipelineResult {
        character: cur,
        events,
        decompositions,
    })
}

/// `⟨χ, χ⟩` and `⟨χ, 1⟩` of a completed character.
pub fn norms(
    chi: &PartialCharacter,
    head: &TableHead,
) -> Result<Option<(Cyclotomic, Cyclotomic)>, CompletionError> {
    let Some(f) = chi.to_class_function() else {
        return Ok(None);
    };
    let n = scalar_product(head, &f, &f)?;
    let t = scalar_product(head, &f, &head.trivial_character())?;
    Ok(Some((n, t)))
}

/// `PARTIAL <table-id> <name>` with either `FROM <character>` plus `BLANK <class>...`
/// lines, or a `VALUES` line of literals and `?`.
pub fn parse_partial(
    block: &RawBlock,
    library: &TableLibrary,
) -> Result<PartialCharacter, CtbError> {
    let parts: Vec<&str> = block.name.split_whitespace().collect();
    let [table, name] = parts[..] else {
        return Err(CtbError::syntax(
            block.line,
            "PARTIAL expects <table-id> <name>",
        ));
    };
    let bundle = library
        .bundle(table)
        .map_err(|e| CtbError::syntax(block.line, e.to_string()))?;
    let head = &bundle.head;
    let mut out: Option<PartialCharacter> = None;
    for l in &block.lines {
        match l.keyword() {
            "FROM" => {
                l.arity(1)?;
                let chi = bundle.character(l.arg(0)?).ok_or_else(|| {
                    l.error(format!(
                        "{table} has no character {}",
                        l.arg(0).unwrap_or("")
                    ))
                })?;
                out = Some(PartialCharacter::from_character(chi));
            }
            "VALUES" => {
                if l.args().len() != head.class_count() {
                    return Err(l.error(format!("VALUES expects {} entries", head.class_count())));
                }
                let values = l
                    .args()
                    .iter()
                    .map(|v| {
                        if v == "?" {
                            Ok(None)
                        } else {
                            parse_value(l.line, v).map(Some)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                out = Some(PartialCharacter {
                    name: String::new(),
                    head_id: head.id.clone(),
                    values,
                    candidates: BTreeMap::new(),
                });
            }
            "BLANK" => {
                let p = out
                    .as_mut()
                    .ok_or_else(|| l.error("BLANK before FROM or VALUES"))?;
                for c in l.args() {
                    let idx = head
                        .class_index(c)
                        .ok_or_else(|| l.error(format!("{table} has no class {c}")))?;
                    p.values[idx] = None;
                }
            }
            other => return Err(l.error(format!("unexpected {other} in PARTIAL"))),
        }
    }
    let mut p =
        out.ok_or_else(|| CtbError::syntax(block.line, "PARTIAL without FROM or VALUES"))?;
    p.name = name.to_string();
    if p.values[0].is_none() {
        return Err(CtbError::syntax(block.line, "the degree must stay known"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::parse_table;

    fn s3() -> crate::tables::TableBundle {
        parse_table(include_str!("../../../fixtures/s3.ctb")).unwrap()
    }

    fn partial(head: &TableHead, vals: &[Option<i64>]) -> PartialCharacter {
        PartialCharacter {
            name: "x".into(),
            head_id: head.id.clone(),
            values: vals.iter().map(|v| v.map(Cyclotomic::from)).collect(),
            candidates: BTreeMap::new(),
        }
    }

    #[test]
    fn congruence_on_s3_involutions() {
        let b = s3();
        let (out, ev) =
            congruence_fill(&partial(&b.head, &[Some(2), None, Some(-1)]), &b.head).unwrap();
        assert_eq!(out.values[1], Some(Cyclotomic::zero()));
        assert_eq!(ev.len(), 1);
    }

    #[test]
    fn residues_respect_the_strict_bound() {
        let got = residues_below(&BigInt::from(1), &BigInt::from(41), &BigInt::from(41)).unwrap();
        assert_eq!(got, vec![BigInt::from(1)]);
        // v² < 4 excludes ±2
        let got = residues_below(&BigInt::from(0), &BigInt::from(2), &BigInt::from(4)).unwrap();
        assert_eq!(got, vec![BigInt::from(0)]);
        assert!(
            residues_below(&BigInt::from(0), &BigInt::from(2), &BigInt::from(1_000_000)).is_none()
        );
    }

    #[test]
    fn orthogonality_on_s3() {
        let b = s3();
        let (out, _) =
            orthogonality_fill(&partial(&b.head, &[Some(2), None, Some(-1)]), &b.head).unwrap();
        assert_eq!(out.values[1], Some(Cyclotomic::zero()));
        let (out, ev) =
            orthogonality_fill(&partial(&b.head, &[Some(1), Some(1), None]), &b.head).unwrap();
        assert_eq!(out.values[2], Some(Cyclotomic::from(-2)));
        assert!(ev
            .iter()
            .any(|e| matches!(e.kind, EventKind::Suspicious(_))));
        let err =
            orthogonality_fill(&partial(&b.head, &[Some(1), None, None]), &b.head).unwrap_err();
        assert!(matches!(
            err,
            CompletionError::UnknownCount { found: 2, .. }
        ));
    }

    #[test]
    fn constituents_on_s3() {
        let b = s3();
        let irr = b.irreducibles();
        let sol = constituent_fill(&partial(&b.head, &[Some(3), Some(1), None]), &b.head, &irr)
            .unwrap_err();
        assert_eq!(sol, CompletionError::RankDeficient { rank: 2, needed: 3 });
        // the trivial and degree-2 characters alone are separated by 1a and 2a
        let two: Vec<Character> = irr.iter().filter(|c| c.name != "1b").cloned().collect();
        let sol =
            constituent_fill(&partial(&b.head, &[Some(3), Some(1), None]), &b.head, &two).unwrap();
        assert_eq!(sol.multiplicities, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(sol.restriction.values[2], Cyclotomic::zero());
    }

    #[test]
    fn defect_zero_skips_without_full_p_part() {
        let b = s3();
        let (out, ev) =
            defect_zero_fill(&partial(&b.head, &[Some(1), None, None]), &b.head, 3).unwrap();
        assert!(out.values[2].is_none());
        assert!(matches!(ev[0].kind, EventKind::Skipped(_)));
        let (out, _) =
            defect_zero_fill(&partial(&b.head, &[Some(2), None, None]), &b.head, 2).unwrap();
        assert_eq!(out.values[1], Some(Cyclotomic::zero()));
        let (_, ev) =
            defect_zero_fill(&partial(&b.head, &[Some(2), None, None]), &b.head, 5).unwrap();
        assert!(matches!(ev[0].kind, EventKind::Skipped(_)));
    }
}
