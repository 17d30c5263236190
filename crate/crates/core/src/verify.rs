//! Orthogonality relations, norm-one checks, integer lattices of virtual
//! characters, and the running conjugacy-class ledger.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::charfun::{
    derive_centralizers, induce_from_cyclic, perm_char_restricted, scalar_product, SuborbitDatum,
    SuborbitSpec,
};
use crate::cyclonum::{sum_values, BigInt, BigRat, Cyclotomic};
use crate::report::Report;
use crate::tables::{
    parse_big, Character, ClassFunction, CtbError, RawBlock, TableHead, TableLibrary,
};

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Both orthogonality relations, exactly; every failing entry is reported,
/// followed by the likeliest single wrong cell when failures concentrate.
pub fn check_orthogonality(head: &TableHead, irr: &[Character]) -> Report {
    let mut report = Report::new();
    let n = head.class_count();
    for chi in irr {
        if chi.values().len() != n {
            report.fail(
                "orthogonality",
                &chi.name,
                format!("{} values for {n} classes", chi.values().len()),
            );
            return report;
        }
    }
    let first: Vec<((usize, usize), Cyclotomic)> = pairs(irr.len())
        .into_par_iter()
        .map(|(i, j)| {
            let v =
                scalar_product(head, &irr[i].function, &irr[j].function).expect("shape checked");
            ((i, j), v)
        })
        .collect();
    let mut row_hits = vec![0usize; irr.len()];
    let mut first_fail = 0;
    for ((i, j), v) in &first {
        let want = if i == j {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        };
        if *v != want {
            first_fail += 1;
            row_hits[*i] += 1;
            if i != j {
                row_hits[*j] += 1;
            }
            report.fail(
                "first-orthogonality",
                &format!("{},{}", irr[*i].name, irr[*j].name),
                format!("expected {want}, found {v}"),
            );
        }
    }
    if first_fail == 0 {
        report.pass(
            "first-orthogonality",
            &head.id,
            format!("{} pairs", first.len()),
        );
    }
    if irr.len() != n {
        report.info(
            "second-orthogonality",
            &head.id,
            format!("skipped: {} characters for {n} classes", irr.len()),
        );
        return report;
    }
    let second: Vec<((usize, usize), Cyclotomic)> = pairs(n)
        .into_par_iter()
        .map(|(c, d)| {
            let terms: Vec<Cyclotomic> = irr
                .iter()
                .map(|chi| &chi.values()[c] * &chi.values()[d].conj())
                .collect();
            ((c, d), sum_values(terms.iter()))
        })
        .collect();
    let mut col_hits = vec![0usize; n];
    let mut second_fail = 0;
    for ((c, d), v) in &second {
        let want = if c == d {
            Cyclotomic::from_integer(head.centralizer(*c).clone())
        } else {
            Cyclotomic::zero()
        };
        if *v != want {
            second_fail += 1;
            col_hits[*c] += 1;
            if c != d {
                col_hits[*d] += 1;
            }
            report.fail(
                "second-orthogonality",
                &format!("{},{}", head.classes[*c].name, head.classes[*d].name),
                format!("expected {want}, found {v}"),
            );
        }
    }
    if second_fail == 0 {
        report.pass(
            "second-orthogonality",
            &head.id,
            format!("{} pairs", second.len()),
        );
    }
    if first_fail > 0 && second_fail > 0 {
        let bad_rows: BTreeSet<usize> = (0..irr.len()).filter(|&i| row_hits[i] > 0).collect();
        let bad_cols: BTreeSet<usize> = (0..n).filter(|&c| col_hits[c] > 0).collect();
        let sums: BTreeMap<(usize, usize), Cyclotomic> = second.into_iter().collect();
        let found = bad_rows
            .iter()
            .flat_map(|&i| bad_cols.iter().map(move |&c| (i, c)))
            .find_map(|(i, c)| single_cell_correction(head, irr, &sums, i, c).map(|w| (i, c, w)));
        match found {
            Some((i, c, w)) => report.fail(
                "suspect-cell",
                &format!("{}@{}", irr[i].name, head.classes[c].name),
                format!(
                    "value {} replaced by {w} satisfies both relations",
                    irr[i].values()[c]
                ),
            ),
            None => report.warn(
                "suspect-cell",
                &head.id,
                "no single-cell correction satisfies both relations",
            ),
        }
    }
    report
}

/// The value at (χᵢ, c) that repairs the column relation against a class where
/// χᵢ is a nonzero rational, if that value also repairs every relation touching
/// row i and column c without making the degree nonpositive.
fn single_cell_correction(
    head: &TableHead,
    irr: &[Character],
    sums: &BTreeMap<(usize, usize), Cyclotomic>,
    i: usize,
    c: usize,
) -> Option<Cyclotomic> {
    let n = head.class_count();
    let (d, r) = (0..n).filter(|&d| d != c).find_map(|d| {
        irr[i].values()[d]
            .as_rational()
            .filter(|r| !r.is_zero())
            .map(|r| (d, r))
    })?;
    let s = &sums[&(c.min(d), c.max(d))];
    // S(c,d) moves by Δ·conj χᵢ(d) = Δ·r when χᵢ(c) moves by Δ
    let delta = s.scale(&(-BigRat::one() / r));
    let w = &irr[i].values()[c] + &delta;
    let mut fixed = irr[i].clone();
    fixed.function.values[c] = w.clone();
    if !fixed.values()[0]
        .as_rational()
        .is_some_and(|q| q.is_positive())
    {
        return None;
    }
    let row_ok = (0..irr.len()).all(|j| {
        let other = if j == i { &fixed } else { &irr[j] };
        let want = if j == i {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        };
        scalar_product(head, &fixed.function, &other.function).is_ok_and(|v| v == want)
    });
    let col_ok = (0..n).all(|e| {
        let terms: Vec<Cyclotomic> = irr
            .iter()
            .enumerate()
            .map(|(k, chi)| {
                let chi = if k == i { &fixed } else { chi };
                &chi.values()[c] * &chi.values()[e].conj()
            })
            .collect();
        let want = if e == c {
            Cyclotomic::from_integer(head.centralizer(c).clone())
        } else {
            Cyclotomic::zero()
        };
        sum_values(terms.iter()) == want
    });
    (row_ok && col_ok).then_some(w)
}

/// `⟨χ, χ⟩ = 1` with positive degree.
pub fn check_norm_one(chi: &Character, head: &TableHead) -> bool {
    let positive = chi
        .values()
        .first()
        .and_then(Cyclotomic::as_rational)
        .is_some_and(|d| d.is_positive());
    positive
        && scalar_product(head, &chi.function, &chi.function).is_ok_and(|v| v == Cyclotomic::one())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("{0} is not in the lattice")]
    NotInLattice(String),
    #[error("class function lives on {found}, lattice on {expected}")]
    HeadMismatch { expected: String, found: String },
    #[error("generator {0} has a value that is not an algebraic integer")]
    NotIntegral(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCoordinates {
    /// Coordinates in the reduced basis.
    pub basis: Vec<BigInt>,
    /// One integer combination of the original generators.
    pub generators: Vec<BigInt>,
}

/// Integer span of class functions, held in Hermite normal form over the
/// integral power-basis coordinates of every value.
#[derive(Debug, Clone)]
pub struct CharacterLattice {
    pub head_id: String,
    pub generators: Vec<ClassFunction>,
    /// conductor used at each class
    conductors: Vec<u64>,
    /// HNF rows with their pivot columns, ascending
    pub basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    /// `basis[i] = Σ_j transform[i][j]·generators[j]`
    transform: Vec<Vec<BigInt>>,
}

fn integral_coords(v: &Cyclotomic, n: u64) -> Option<Vec<BigInt>> {
    v.coords_in(n)
        .into_iter()
        .map(|q| q.is_integer().then(|| q.to_integer()))
        .collect()
}

fn flatten(f: &ClassFunction, conductors: &[u64]) -> Option<Vec<BigInt>> {
    let mut out = Vec::new();
    for (v, &n) in f.values.iter().zip(conductors) {
        if n % v.conductor() != 0 {
            return None;
        }
        out.extend(integral_coords(v, n)?);
    }
    Some(out)
}

fn axpy(target: &mut [BigInt], k: &BigInt, row: &[BigInt]) {
    if k.is_zero() {
        return;
    }
    for (t, r) in target.iter_mut().zip(row) {
        if !r.is_zero() {
            *t -= k * r;
        }
    }
}

impl CharacterLattice {
    pub fn new(head_id: &str, generators: Vec<ClassFunction>) -> Result<Self, LatticeError> {
        let classes = generators.first().map_or(0, |g| g.values.len());
        let mut conductors = vec![1u64; classes];
        for g in &generators {
            if g.head_id != head_id {
                return Err(LatticeError::HeadMismatch {
                    expected: head_id.into(),
                    found: g.head_id.clone(),
                });
            }
            for (n, v) in conductors.iter_mut().zip(&g.values) {
                *n = n.lcm(&v.conductor());
            }
        }
        let mut rows = Vec::with_capacity(generators.len());
        for (j, g) in generators.iter().enumerate() {
            rows.push(
                flatten(g, &conductors)
                    .ok_or_else(|| LatticeError::NotIntegral(format!("#{j}")))?,
            );
        }
        let m = generators.len();
        let mut transform: Vec<Vec<BigInt>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let width = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..width {
            // Euclid on the column: smallest nonzero magnitude pivots, lowest index on ties
            loop {
                let Some(sel) = (r..rows.len())
                    .filter(|&i| !rows[i][col].is_zero())
                    .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()).then(a.cmp(&b)))
                else {
                    break;
                };
                rows.swap(r, sel);
                transform.swap(r, sel);
                let mut done = true;
                for i in r + 1..rows.len() {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&rows[r][col]);
                    let (pr, pt) = (rows[r].clone(), transform[r].clone());
                    axpy(&mut rows[i], &q, &pr);
                    axpy(&mut transform[i], &q, &pt);
                    if !rows[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if r < rows.len() && !rows[r][col].is_zero() {
                if rows[r][col].is_negative() {
                    for x in rows[r].iter_mut().chain(transform[r].iter_mut()) {
                        *x = -&*x;
                    }
                }
                let (pr, pt) = (rows[r].clone(), transform[r].clone());
                for i in 0..r {
                    let q = rows[i][col].div_floor(&pr[col]);
                    axpy(&mut rows[i], &q, &pr);
                    axpy(&mut transform[i], &q, &pt);
                }
                pivots.push(col);
                r += 1;
            }
        }
        rows.truncate(r);
        transform.truncate(r);
        Ok(CharacterLattice {
            head_id: head_id.into(),
            generators,
            conductors,
            basis: rows,
            pivots,
            transform,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer coordinates of `f`, or `NotInLattice`.
    pub fn membership(
        &self,
        f: &ClassFunction,
        label: &str,
    ) -> Result<LatticeCoordinates, LatticeError> {
        if f.head_id != self.head_id {
            return Err(LatticeError::HeadMismatch {
                expected: self.head_id.clone(),
                found: f.head_id.clone(),
            });
        }
        let outside = || LatticeError::NotInLattice(label.to_string());
        if f.values.len() != self.conductors.len() {
            return Err(outside());
        }
        let mut v = flatten(f, &self.conductors).ok_or_else(outside)?;
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, rem) = v[p].div_mod_floor(&row[p]);
            if !rem.is_zero() {
                return Err(outside());
            }
            axpy(&mut v, &q, row);
            coords.push(q);
        }
        if v.iter().any(|x| !x.is_zero()) {
            return Err(outside());
        }
        let mut gens = vec![BigInt::zero(); self.generators.len()];
        for (c, t) in coords.iter().zip(&self.transform) {
            for (g, x) in gens.iter_mut().zip(t) {
                *g += c * x;
            }
        }
        Ok(LatticeCoordinates {
            basis: coords,
            generators: gens,
        })
    }
}

/// The trivial character plus inductions of all characters of every cyclic subgroup.
pub fn cyclic_induction_lattice(
    head: &TableHead,
) -> Result<CharacterLattice, crate::charfun::CharFunError> {
    let mut gens = vec![head.trivial_character()];
    for c in 1..head.class_count() {
        gens.extend(induce_from_cyclic(head, c)?);
    }
    Ok(CharacterLattice::new(&head.id, gens).expect("induced characters are integral"))
}

/// Lattice membership plus norm one for every claimed irreducible.
pub fn verify_irreducibles(
    head: &TableHead,
    lattice: &CharacterLattice,
    irr: &[Character],
) -> Report {
    let mut report = Report::new();
    for chi in irr {
        match lattice.membership(&chi.function, &chi.name) {
            Ok(_) => report.pass(
                "lattice-membership",
                &chi.name,
                format!("rank {}", lattice.rank()),
            ),
            Err(e) => report.fail("lattice-membership", &chi.name, e.to_string()),
        }
        if check_norm_one(chi, head) {
            report.pass("norm-one", &chi.name, "");
        } else {
            report.fail(
                "norm-one",
                &chi.name,
                "norm differs from 1 or degree not positive",
            );
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub label: String,
    pub count: u64,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("source {0} counted twice")]
    DoubleCount(String),
    #[error("source {0} must add a positive count")]
    NonPositive(String),
}

/// Running class count; each source label may be added once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLedger {
    pub group: String,
    pub target: u64,
    pub entries: Vec<LedgerEntry>,
}

impl ClassLedger {
    pub fn new(group: &str, target: u64) -> Self {
        ClassLedger {
            group: group.into(),
            target,
            entries: Vec::new(),
        }
    }

    pub fn total(&self) -> u64 {
        self.entries.last().map_or(0, |e| e.total)
    }

    pub fn add(&mut self, label: &str, count: u64) -> Result<u64, LedgerError> {
        if count == 0 {
            return Err(LedgerError::NonPositive(label.into()));
        }
        if self.entries.iter().any(|e| e.label == label) {
            return Err(LedgerError::DoubleCount(label.into()));
        }
        let total = self.total() + count;
        self.entries.push(LedgerEntry {
            label: label.into(),
            count,
            total,
        });
        Ok(total)
    }

    /// Replays the totals, compares with the target and, given the assembled
    /// head, checks its class count and class equation.
    pub fn check(&self, head: Option<&TableHead>) -> Report {
        let mut report = Report::new();
        let mut running = 0u64;
        for e in &self.entries {
            running += e.count;
            report.info(
                "ledger-step",
                &e.label,
                format!("+{} -> {}", e.count, running),
            );
        }
        if running == self.target {
            report.pass("ledger-total", &self.group, format!("{running} classes"));
        } else {
            report.fail(
                "ledger-total",
                &self.group,
                format!("{running} classes, expected {}", self.target),
            );
        }
        if let Some(h) = head {
            if h.class_count() as u64 == self.target {
                report.pass("ledger-head", &h.id, format!("{} classes", h.class_count()));
            } else {
                report.fail(
                    "ledger-head",
                    &h.id,
                    format!("{} classes, expected {}", h.class_count(), self.target),
                );
            }
            report.extend(class_equation_report(h));
        }
        report
    }
}

pub fn class_equation_report(head: &TableHead) -> Report {
    let mut report = Report::new();
    let mut sum = BigRat::zero();
    for c in 0..head.class_count() {
        sum += BigRat::new(head.group_order.clone(), head.centralizer(c).clone());
    }
    if sum == BigRat::from_integer(head.group_order.clone()) {
        report.pass(
            "class-equation",
            &head.id,
            format!("sum of class sizes = {}", head.group_order),
        );
    } else {
        report.fail(
            "class-equation",
            &head.id,
            format!(
                "sum of class sizes = {sum}, group order {}",
                head.group_order
            ),
        );
    }
    report
}

/// `LEDGER <group>` / `TARGET <n>` / `ADD <label> <count>` / `END`.
pub fn parse_ledger(block: &RawBlock) -> Result<ClassLedger, CtbError> {
    let group = block.name.trim().to_string();
    let mut target = None;
    let mut adds = Vec::new();
    for l in &block.lines {
        match l.keyword() {
            "TARGET" => {
                l.arity(1)?;
                target = Some(parse_big(l.line, l.arg(0)?)?);
            }
            "ADD" => {
                l.arity(2)?;
                adds.push((l, l.arg(0)?.to_string(), parse_big(l.line, l.arg(1)?)?));
            }
            other => return Err(l.error(format!("unexpected {other} in LEDGER"))),
        }
    }
    let small = |line: usize, v: BigInt| -> Result<u64, CtbError> {
        u64::try_from(v).map_err(|_| CtbError::syntax(line, "count out of range"))
    };
    let target = small(
        block.line,
        target.ok_or_else(|| CtbError::syntax(block.line, "LEDGER without TARGET"))?,
    )?;
    let mut ledger = ClassLedger::new(&group, target);
    for (l, label, count) in adds {
        ledger
            .add(&label, small(l.line, count)?)
            .map_err(|e| l.error(e.to_string()))?;
    }
    Ok(ledger)
}

/// Head invariants, orthogonality when irreducibles are present, and norm one.
pub fn verify_table(head: &TableHead, irr: &[Character]) -> Report {
    let mut report = Report::new();
    match head.validate() {
        Ok(()) => report.pass("head", &head.id, format!("{} classes", head.class_count())),
        Err(e) => {
            report.fail("head", &head.id, e.to_string());
            return report;
        }
    }
    report.extend(class_equation_report(head));
    if irr.is_empty() {
        return report;
    }
    report.extend(check_orthogonality(head, irr));
    for chi in irr {
        if check_norm_one(chi, head) {
            report.pass("norm-one", &chi.name, "");
        } else {
            report.fail(
                "norm-one",
                &chi.name,
                "norm differs from 1 or degree not positive",
            );
        }
    }
    report
}

/// Orbit lengths against stabilizer orders, their sum against the index of the
/// acting group, and degree sums of any listed suborbit constituents.
pub fn check_suborbit_table(spec: &SuborbitSpec, lib: &TableLibrary) -> Report {
    let mut report = Report::new();
    let acting = match lib.group_order(&spec.acting) {
        Ok(n) => n,
        Err(e) => {
            report.fail("suborbit-acting", &spec.acting, e.to_string());
            return report;
        }
    };
    let mut total = BigInt::zero();
    for row in &spec.rows {
        total += &row.orbit_length;
        let at = if row.label.is_empty() {
            row.stabilizer_id.clone()
        } else {
            row.label.clone()
        };
        match lib.group_order(&row.stabilizer_id) {
            Ok(stab) if &row.orbit_length * &stab == acting => report.pass(
                "orbit-length",
                &at,
                format!("{} = {acting}/{stab}", row.orbit_length),
            ),
            Ok(stab) => report.fail(
                "orbit-length",
                &at,
                format!(
                    "{} but {acting}/{stab} is {}",
                    row.orbit_length,
                    BigRat::new(acting.clone(), stab.clone())
                ),
            ),
            Err(e) => report.fail("orbit-length", &at, e.to_string()),
        }
    }
    if let Some(parent) = &spec.parent {
        match lib.group_order(parent) {
            Ok(g) if total.clone() * &acting == g => report.pass(
                "suborbit-total",
                &spec.acting,
                format!("{total} = {g}/{acting}"),
            ),
            Ok(g) => report.fail(
                "suborbit-total",
                &spec.acting,
                format!(
                    "{total} but {g}/{acting} is {}",
                    BigRat::new(g.clone(), acting.clone())
                ),
            ),
            Err(e) => report.fail("suborbit-total", &spec.acting, e.to_string()),
        }
    } else {
        report.info(
            "suborbit-total",
            &spec.acting,
            format!("{total} points, no parent given"),
        );
    }
    for (label, m) in &spec.multiplicities {
        let Some(deg) = &spec.degrees else {
            report.fail("constituent-degrees", label, "no DEGREES line");
            continue;
        };
        let Some(row) = spec.rows.iter().find(|r| &r.label == label) else {
            report.fail("constituent-degrees", label, "no suborbit with this label");
            continue;
        };
        if m.len() != deg.len() {
            report.fail(
                "constituent-degrees",
                label,
                format!("{} multiplicities for {} degrees", m.len(), deg.len()),
            );
            continue;
        }
        let sum: BigInt = m.iter().zip(deg).map(|(a, b)| a * b).sum();
        let count: BigInt = m.iter().sum();
        if sum == row.orbit_length {
            report.pass(
                "constituent-degrees",
                label,
                format!("{count} constituents of total degree {sum}"),
            );
        } else {
            report.fail(
                "constituent-degrees",
                label,
                format!("total degree {sum}, orbit length {}", row.orbit_length),
            );
        }
    }
    report
}

/// The restricted permutation character, when every stabilizer table and its
/// fusion into the acting group is loaded, and the centralizer orders it implies
/// in the parent.
pub fn permutation_character_report(
    spec: &SuborbitSpec,
    lib: &TableLibrary,
) -> (Report, Option<ClassFunction>) {
    let mut report = Report::new();
    let Ok(acting) = lib.head(&spec.acting) else {
        report.info(
            "permutation-character",
            &spec.acting,
            "acting table not loaded",
        );
        return (report, None);
    };
    let identity = acting.identity_fusion();
    let mut data = Vec::new();
    let mut missing = Vec::new();
    for row in &spec.rows {
        let stab = lib.head(&row.stabilizer_id);
        let fus = if row.stabilizer_id == spec.acting {
            Ok(&identity)
        } else {
            lib.fusion(&row.stabilizer_id, &spec.acting)
        };
        match (stab, fus) {
            (Ok(stabilizer), Ok(fusion)) => data.push(SuborbitDatum {
                stabilizer,
                fusion,
                orbit_length: &row.orbit_length,
            }),
            _ => missing.push(row.stabilizer_id.as_str()),
        }
    }
    if !missing.is_empty() {
        report.info(
            "permutation-character",
            &spec.acting,
            format!("needs stabilizer tables or fusions: {}", missing.join(",")),
        );
        return (report, None);
    }
    let perm = match perm_char_restricted(&data, acting) {
        Ok(p) => p,
        Err(e) => {
            report.fail("permutation-character", &spec.acting, e.to_string());
            return (report, None);
        }
    };
    report.info("permutation-character", &spec.acting, perm.to_string());
    let suborbits = Cyclotomic::from_integer(BigInt::from(spec.rows.len()));
    match scalar_product(acting, &perm, &acting.trivial_character()) {
        Ok(v) if v == suborbits => report.pass(
            "burnside",
            &spec.acting,
            format!("trivial multiplicity {v}"),
        ),
        Ok(v) => report.fail(
            "burnside",
            &spec.acting,
            format!("trivial multiplicity {v}, {} suborbits", spec.rows.len()),
        ),
        Err(e) => report.fail("burnside", &spec.acting, e.to_string()),
    }
    let Some(parent) = &spec.parent else {
        return (report, Some(perm));
    };
    let (Ok(big), Ok(fus)) = (lib.head(parent), lib.fusion(&spec.acting, parent)) else {
        report.info("centralizers", parent, "parent table or fusion not loaded");
        return (report, Some(perm));
    };
    match derive_centralizers(&perm, acting, big, fus) {
        Ok(found) => {
            for (g, c) in found {
                let name = &big.classes[g].name;
                if &c == big.centralizer(g) {
                    report.pass("centralizer", name, c.to_string());
                } else {
                    report.fail(
                        "centralizer",
                        name,
                        format!("derived {c}, table has {}", big.centralizer(g)),
                    );
                }
            }
        }
        Err(e) => report.fail("centralizers", parent, e.to_string()),
    }
    (report, Some(perm))
}

/// Classes of each element order, for reporting coverage.
pub fn classes_by_order(head: &TableHead) -> BTreeMap<u64, BTreeSet<usize>> {
    let mut out: BTreeMap<u64, BTreeSet<usize>> = BTreeMap::new();
    for c in 0..head.class_count() {
        out.entry(head.order(c)).or_default().insert(c);
    }
    out
}
