//! Refinement of partial power maps by order arithmetic, centralizer
//! divisibility, composition/commutativity and Galois bijectivity.

use std::collections::{BTreeMap, BTreeSet};

use super::SolverError;
use crate::cyclonum::sqrt_of_squarefree;
use crate::tables::{FusionMap, MapEntry, PartialClassMap, TableHead};

/// Declares that the values on `classes` generate `ℚ(√d)`, so for a prime `p`
/// coprime to the element order, `c^p = c` exactly when `σ_p` fixes `√d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticField {
    pub d: i64,
    pub classes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub prime: u64,
    pub class: usize,
    pub candidates: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PowerMapReport {
    /// Entries with two or more surviving images, by (prime, class).
    pub ambiguities: Vec<Ambiguity>,
}

struct State<'a> {
    head: &'a TableHead,
    primes: Vec<u64>,
    dom: Vec<Vec<BTreeSet<usize>>>,
}

impl<'a> State<'a> {
    fn new(head: &'a TableHead) -> Result<Self, SolverError> {
        let primes: Vec<u64> = head.power_maps.keys().copied().collect();
        let n = head.class_count();
        let mut dom = Vec::with_capacity(primes.len());
        for &p in &primes {
            let map = head.power_map(p).expect("listed prime");
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                let order = head.order(c);
                let residue = p % order;
                let set: BTreeSet<usize> = (0..n)
                    .filter(|&x| map.get(c).allows(x))
                    .filter(|&x| head.power_image_allowed(p, c, x))
                    .filter(|&x| order % p == 0 || head.centralizer(x) == head.centralizer(c))
                    .filter(|&x| residue != 1 || x == c)
                    .collect();
                row.push(set);
            }
            dom.push(row);
        }
        let s = State { head, primes, dom };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<(), SolverError> {
        for (pi, row) in self.dom.iter().enumerate() {
            for (c, set) in row.iter().enumerate() {
                if set.is_empty() {
                    return Err(SolverError::InconsistentHead(format!(
                        "{}: no admissible image for class {} under the {}-th power map",
                        self.head.id, self.head.classes[c].name, self.primes[pi]
                    )));
                }
            }
        }
        Ok(())
    }

    fn restrict(&mut self, pi: usize, c: usize, keep: &BTreeSet<usize>) -> bool {
        let before = self.dom[pi][c].len();
        self.dom[pi][c].retain(|x| keep.contains(x));
        self.dom[pi][c].len() != before
    }

    // Possible classes of (g^p)^q for g in class c.
    fn two_step(&self, pi: usize, qi: usize, c: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &x in &self.dom[pi][c] {
            out.extend(self.dom[qi][x].iter().copied());
        }
        out
    }

    // Known target for g^{pq} when order arithmetic or another prime pins it.
    fn composite_target(&self, c: usize, r: u64, n: u64) -> Option<BTreeSet<usize>> {
        if r == 0 {
            return Some(BTreeSet::from([0]));
        }
        if r == 1 {
            return Some(BTreeSet::from([c]));
        }
        let si = self.primes.iter().position(|&s| s % n == r)?;
        Some(self.dom[si][c].clone())
    }

    fn sweep(&mut self) -> bool {
        let mut changed = false;
        let np = self.primes.len();
        let nc = self.head.class_count();
        for c in 0..nc {
            let n = self.head.order(c);
            // congruent primes give the same power
            for pi in 0..np {
                for qi in pi + 1..np {
                    if self.primes[pi] % n == self.primes[qi] % n {
                        let both: BTreeSet<usize> = self.dom[pi][c]
                            .intersection(&self.dom[qi][c])
                            .copied()
                            .collect();
                        changed |= self.restrict(pi, c, &both);
                        changed |= self.restrict(qi, c, &both);
                    }
                }
            }
            for pi in 0..np {
                for qi in 0..np {
                    let (p, q) = (self.primes[pi], self.primes[qi]);
                    let r = ((p % n) * (q % n)) % n;
                    let target = match self.composite_target(c, r, n) {
                        Some(t) => t,
                        None if pi != qi => self.two_step(qi, pi, c),
                        None => continue,
                    };
                    // g^p must have a q-th power inside the target
                    let support: BTreeSet<usize> = self.dom[pi][c]
                        .iter()
                        .copied()
                        .filter(|&x| self.dom[qi][x].iter().any(|y| target.contains(y)))
                        .collect();
                    changed |= self.restrict(pi, c, &support);
                    if r > 1 {
                        if let Some(si) = self.primes.iter().position(|&s| s % n == r) {
                            let reach = self.two_step(pi, qi, c);
                            changed |= self.restrict(si, c, &reach);
                        }
                    }
                }
            }
        }
        // x ↦ x^p permutes the classes of each order coprime to p
        for pi in 0..np {
            let p = self.primes[pi];
            let mut by_order: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
            for c in 0..nc {
                if self.head.order(c) % p != 0 {
                    by_order.entry(self.head.order(c)).or_default().push(c);
                }
            }
            for cs in by_order.values() {
                for &c in cs {
                    if self.dom[pi][c].len() != 1 {
                        continue;
                    }
                    let img = *self.dom[pi][c].iter().next().expect("singleton");
                    for &o in cs {
                        if o != c && self.dom[pi][o].contains(&img) {
                            self.dom[pi][o].remove(&img);
                            changed = true;
                        }
                    }
                }
            }
        }
        changed
    }

    fn run(&mut self) -> Result<(), SolverError> {
        loop {
            let changed = self.sweep();
            self.check()?;
            if !changed {
                return Ok(());
            }
        }
    }

    fn inject(&mut self, decls: &[QuadraticField]) -> Result<(), SolverError> {
        for decl in decls {
            let root = sqrt_of_squarefree(decl.d)
                .map_err(|e| SolverError::InvalidProblem(e.to_string()))?;
            for &c in &decl.classes {
                let n = self.head.order(c);
                if n % root.conductor() != 0 {
                    return Err(SolverError::InvalidProblem(format!(
                        "sqrt({}) does not lie in the field of element order {} of class {}",
                        decl.d, n, self.head.classes[c].name
                    )));
                }
                for pi in 0..self.primes.len() {
                    let p = self.primes[pi];
                    if n % p == 0 {
                        continue;
                    }
                    let fixed = root
                        .galois(p as i64)
                        .map_err(|e| SolverError::InvalidProblem(e.to_string()))?
                        == root;
                    if fixed {
                        let keep = BTreeSet::from([c]);
                        self.restrict(pi, c, &keep);
                    } else {
                        self.dom[pi][c].remove(&c);
                    }
                }
            }
        }
        self.check()
    }

    // (f(h))^p must be f(h^p) for every resolved subgroup class h.
    fn commute_with(&mut self, sub: &TableHead, fus: &FusionMap) -> Result<(), SolverError> {
        if fus.to_head != self.head.id
            || fus.from_head != sub.id
            || fus.entries.len() != sub.class_count()
        {
            return Err(SolverError::InvalidProblem(format!(
                "fusion {} -> {} does not fit",
                fus.from_head, fus.to_head
            )));
        }
        for (pi, &p) in self.primes.clone().iter().enumerate() {
            let Some(smap) = sub.power_map(p) else {
                continue;
            };
            for h in 0..sub.class_count() {
                let (Some(g), Some(k)) = (fus.entries.resolved(h), smap.resolved(h)) else {
                    continue;
                };
                if let Some(keep) = fus.entries.get(k).candidates() {
                    self.restrict(pi, g, &keep);
                }
            }
        }
        self.check()
    }

    fn into_head(self) -> (TableHead, PowerMapReport) {
        let mut head = self.head.clone();
        let mut report = PowerMapReport::default();
        for (pi, row) in self.dom.into_iter().enumerate() {
            let p = self.primes[pi];
            let mut entries = Vec::with_capacity(row.len());
            for (c, set) in row.into_iter().enumerate() {
                if set.len() > 1 {
                    report.ambiguities.push(Ambiguity {
                        prime: p,
                        class: c,
                        candidates: set.iter().copied().collect(),
                    });
                }
                entries.push(MapEntry::from_set(set).expect("checked nonempty"));
            }
            head.power_maps.insert(p, PartialClassMap::new(entries));
        }
        (head, report)
    }
}

/// Refines every power map of `head`; never removes a true image and is idempotent.
pub fn refine_power_maps(head: &TableHead) -> Result<(TableHead, PowerMapReport), SolverError> {
    refine_power_maps_with(head, &[], &[])
}

/// [`refine_power_maps`] after injecting quadratic-field constraints on classes
/// and commutativity with the given subgroup fusions into `head`.
pub fn refine_power_maps_with(
    head: &TableHead,
    fields: &[QuadraticField],
    subgroups: &[(&TableHead, &FusionMap)],
) -> Result<(TableHead, PowerMapReport), SolverError> {
    let mut s = State::new(head)?;
    s.inject(fields)?;
    for (sub, fus) in subgroups {
        s.commute_with(sub, fus)?;
    }
    s.run()?;
    Ok(s.into_head())
}

/// Copy of `head` with fully unknown maps added for the listed primes that lack one.
pub fn with_blank_maps(head: &TableHead, primes: &[u64]) -> TableHead {
    let mut h = head.clone();
    for &p in primes {
        h.power_maps
            .entry(p)
            .or_insert_with(|| PartialClassMap::unknown(head.class_count()));
    }
    h
}

/// Copy of `head` with the `p`-th power map forgotten on the listed classes.
pub fn blank_entries(head: &TableHead, p: u64, classes: &[usize]) -> TableHead {
    let mut h = head.clone();
    if let Some(map) = h.power_maps.get_mut(&p) {
        for &c in classes {
            map.entries_mut()[c] = MapEntry::Unknown;
        }
    }
    h
}

/// Every full resolution of the remaining ambiguities that survives refinement,
/// at most `limit` of them, in lexicographic order of choices.
pub fn complete_power_maps(head: &TableHead, limit: usize) -> Result<Vec<TableHead>, SolverError> {
    let (refined, report) = refine_power_maps(head)?;
    let mut out = Vec::new();
    complete_rec(&refined, &report, limit, &mut out);
    Ok(out)
}

fn complete_rec(head: &TableHead, report: &PowerMapReport, limit: usize, out: &mut Vec<TableHead>) {
    if out.len() >= limit {
        return;
    }
    let Some(a) = report.ambiguities.first() else {
        out.push(head.clone());
        return;
    };
    for &img in &a.candidates {
        let mut h = head.clone();
        h.power_maps.get_mut(&a.prime).expect("prime").entries_mut()[a.class] =
            MapEntry::Resolved(img);
        if let Ok((next, rep)) = refine_power_maps(&h) {
            complete_rec(&next, &rep, limit, out);
        }
    }
}

/// Whether every resolved power-map entry of `head` is among the candidates of `refined`.
pub fn contains_truth(truth: &TableHead, refined: &TableHead) -> bool {
    truth.power_maps.iter().all(|(p, map)| {
        let Some(r) = refined.power_map(*p) else {
            return false;
        };
        (0..map.len()).all(|c| match map.resolved(c) {
            Some(x) => r.get(c).allows(x),
            None => true,
        })
    })
}
