//! Nonnegative integer decompositions of a target degree under value constraints.
//!
//! Linear constraints (the degree, fixed values, and "one distinct value" shapes)
//! are eliminated over ℚ first; the search then runs over the free multiplicities
//! only, and every leaf is rechecked against the full constraint list.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::SolverError;
use crate::cyclonum::{sum_values, BigInt, BigRat, Cyclotomic};
use crate::linalg::echelon;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub name: String,
    pub degree: BigInt,
    /// Values on the problem's designated classes; `None` where unknown.
    pub values: Vec<Option<Cyclotomic>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// At most `k` distinct combined values on the given designated classes.
    MaxDistinctValues {
        classes: Vec<usize>,
        k: usize,
    },
    FixedValue {
        class: usize,
        value: Cyclotomic,
    },
    MultiplicityBound {
        candidate: usize,
        max: u64,
    },
    ExcludeSolution(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionProblem {
    pub name: String,
    /// Labels of the designated classes that candidate values refer to.
    pub classes: Vec<String>,
    pub candidates: Vec<Candidate>,
    pub target_degree: BigInt,
    pub constraints: Vec<Constraint>,
}

impl DecompositionProblem {
    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |m: String| Err(SolverError::InvalidProblem(format!("{}: {m}", self.name)));
        if self.target_degree.is_zero() || self.target_degree < BigInt::zero() {
            return bad("target degree must be positive".into());
        }
        for c in &self.candidates {
            if c.degree <= BigInt::zero() {
                return bad(format!("candidate {} has nonpositive degree", c.name));
            }
            if c.values.len() != self.classes.len() {
                return bad(format!(
                    "candidate {} has {} values for {} classes",
                    c.name,
                    c.values.len(),
                    self.classes.len()
                ));
            }
        }
        let nc = self.classes.len();
        for con in &self.constraints {
            match con {
                Constraint::MaxDistinctValues { classes, k } => {
                    if *k == 0 {
                        return bad("MaxDistinctValues needs k >= 1".into());
                    }
                    if classes.is_empty() || classes.iter().any(|&c| c >= nc) {
                        return bad("MaxDistinctValues references an undesignated class".into());
                    }
                }
                Constraint::FixedValue { class, .. } => {
                    if *class >= nc {
                        return bad("FixedValue references an undesignated class".into());
                    }
                }
                Constraint::MultiplicityBound { candidate, .. } => {
                    if *candidate >= self.candidates.len() {
                        return bad("MultiplicityBound references an unknown candidate".into());
                    }
                }
                Constraint::ExcludeSolution(v) => {
                    if v.len() != self.candidates.len() {
                        return bad("ExcludeSolution has the wrong length".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// Designated classes touched by value constraints.
    pub fn constrained_classes(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for con in &self.constraints {
            match con {
                Constraint::MaxDistinctValues { classes, .. } => {
                    out.extend(classes.iter().copied())
                }
                Constraint::FixedValue { class, .. } => {
                    out.insert(*class);
                }
                _ => {}
            }
        }
        out
    }

    /// Candidates with a known value on every constrained class.
    pub fn admissible(&self) -> Vec<bool> {
        let classes = self.constrained_classes();
        self.candidates
            .iter()
            .map(|c| classes.iter().all(|&k| c.values[k].is_some()))
            .collect()
    }

    /// `Σ m_i ψ_i(class)`, or `None` if a used candidate is unknown there.
    pub fn combined_value(&self, m: &[u64], class: usize) -> Option<Cyclotomic> {
        let mut terms = Vec::new();
        for (c, &mi) in self.candidates.iter().zip(m) {
            if mi == 0 {
                continue;
            }
            let v = c.values[class].as_ref()?;
            terms.push(v.scale(&BigRat::from_integer(mi.into())));
        }
        Some(sum_values(terms.iter()))
    }

    /// Whether `m` satisfies the degree equation and every constraint.
    pub fn accepts(&self, m: &[u64]) -> bool {
        self.accepts_with(m, &self.admissible())
    }

    fn accepts_with(&self, m: &[u64], admissible: &[bool]) -> bool {
        if m.iter().zip(admissible).any(|(&mi, &ok)| mi > 0 && !ok) {
            return false;
        }
        let degree: BigInt = self
            .candidates
            .iter()
            .zip(m)
            .map(|(c, &mi)| &c.degree * BigInt::from(mi))
            .sum();
        if degree != self.target_degree {
            return false;
        }
        self.constraints.iter().all(|con| match con {
            Constraint::MaxDistinctValues { classes, k } if *k >= classes.len() => {
                classes.iter().all(|&c| self.combined_value(m, c).is_some())
            }
            Constraint::MaxDistinctValues { classes, k } => {
                let mut seen = BTreeSet::new();
                for &c in classes {
                    match self.combined_value(m, c) {
                        Some(v) => {
                            seen.insert(v);
                        }
                        None => return false,
                    }
                }
                seen.len() <= *k
            }
            Constraint::FixedValue { class, value } => {
                self.combined_value(m, *class).as_ref() == Some(value)
            }
            Constraint::MultiplicityBound { candidate, max } => m[*candidate] <= *max,
            Constraint::ExcludeSolution(v) => v.as_slice() != m,
        })
    }
}

struct Plan {
    free: Vec<usize>,
    // each pivot: (variable, rhs, coefficients on free variables)
    pivots: Vec<(usize, BigRat, Vec<BigRat>)>,
    bounds: Vec<u64>,
    degrees: Vec<BigInt>,
    admissible: Vec<bool>,
}

fn plan(p: &DecompositionProblem) -> Result<Option<Plan>, SolverError> {
    let n = p.candidates.len();
    let admissible = p.admissible();
    let mut bounds = Vec::with_capacity(n);
    for (i, c) in p.candidates.iter().enumerate() {
        let b = (&p.target_degree).div_floor(&c.degree);
        let mut b = b.to_u64().ok_or_else(|| {
            SolverError::InvalidProblem(format!(
                "{}: multiplicity bound for {} exceeds 64 bits",
                p.name, c.name
            ))
        })?;
        if !admissible[i] {
            b = 0;
        }
        for con in &p.constraints {
            if let Constraint::MultiplicityBound { candidate, max } = con {
                if *candidate == i {
                    b = b.min(*max);
                }
            }
        }
        bounds.push(b);
    }

    let classes = p.constrained_classes();
    let mut conductor = 1u64;
    for &k in &classes {
        for (c, ok) in p.candidates.iter().zip(&admissible) {
            if *ok {
                conductor = conductor.lcm(&c.values[k].as_ref().expect("admissible").conductor());
            }
        }
    }
    for con in &p.constraints {
        if let Constraint::FixedValue { value, .. } = con {
            conductor = conductor.lcm(&value.conductor());
        }
    }
    let coords = |i: usize, k: usize| -> Vec<BigRat> {
        if !admissible[i] {
            return vec![BigRat::zero(); crate::arith::totient(conductor) as usize];
        }
        p.candidates[i].values[k]
            .as_ref()
            .expect("admissible")
            .coords_in(conductor)
    };

    let mut rows: Vec<Vec<BigRat>> = Vec::new();
    let mut degree_row: Vec<BigRat> = p
        .candidates
        .iter()
        .map(|c| BigRat::from_integer(c.degree.clone()))
        .collect();
    degree_row.push(BigRat::from_integer(p.target_degree.clone()));
    rows.push(degree_row);
    for (i, &b) in bounds.iter().enumerate() {
        if b == 0 {
            let mut row = vec![BigRat::zero(); n + 1];
            row[i] = BigRat::from_integer(1.into());
            rows.push(row);
        }
    }
    for con in &p.constraints {
        match con {
            Constraint::FixedValue { class, value } => {
                let target = value.coords_in(conductor);
                let cs: Vec<Vec<BigRat>> = (0..n).map(|i| coords(i, *class)).collect();
                for (t, rhs) in target.iter().enumerate() {
                    let mut row: Vec<BigRat> = cs.iter().map(|c| c[t].clone()).collect();
                    row.push(rhs.clone());
                    rows.push(row);
                }
            }
            Constraint::MaxDistinctValues { classes, k: 1 } => {
                let first: Vec<Vec<BigRat>> = (0..n).map(|i| coords(i, classes[0])).collect();
                for &c in &classes[1..] {
                    let other: Vec<Vec<BigRat>> = (0..n).map(|i| coords(i, c)).collect();
                    for t in 0..first[0].len() {
                        let mut row: Vec<BigRat> =
                            (0..n).map(|i| &first[i][t] - &other[i][t]).collect();
                        row.push(BigRat::zero());
                        rows.push(row);
                    }
                }
            }
            _ => {}
        }
    }
    let ech = echelon(rows, n);
    if !ech.consistent {
        return Ok(None);
    }
    let pivot_set: BTreeSet<usize> = ech.pivots.iter().copied().collect();
    let free: Vec<usize> = (0..n).filter(|i| !pivot_set.contains(i)).collect();
    let pivots = ech
        .rows
        .iter()
        .zip(&ech.pivots)
        .map(|(row, &pv)| {
            (
                pv,
                row[n].clone(),
                free.iter().map(|&f| row[f].clone()).collect(),
            )
        })
        .collect();
    let degrees = p.candidates.iter().map(|c| c.degree.clone()).collect();
    Ok(Some(Plan {
        free,
        pivots,
        bounds,
        degrees,
        admissible,
    }))
}

fn leaf(p: &DecompositionProblem, plan: &Plan, free_vals: &[u64], out: &mut Vec<Vec<u64>>) {
    let mut m = vec![0u64; p.candidates.len()];
    for (&f, &v) in plan.free.iter().zip(free_vals) {
        m[f] = v;
    }
    for (var, rhs, coefs) in &plan.pivots {
        let mut x = rhs.clone();
        for (c, &v) in coefs.iter().zip(free_vals) {
            if v != 0 && !c.is_zero() {
                x -= c * BigRat::from_integer(v.into());
            }
        }
        if !x.is_integer() || x < BigRat::zero() {
            return;
        }
        match x.to_integer().to_u64() {
            Some(v) if v <= plan.bounds[*var] => m[*var] = v,
            _ => return,
        }
    }
    if p.accepts_with(&m, &plan.admissible) {
        out.push(m);
    }
}

fn search(
    p: &DecompositionProblem,
    plan: &Plan,
    depth: usize,
    used: &BigInt,
    vals: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if depth == plan.free.len() {
        leaf(p, plan, vals, out);
        return;
    }
    let f = plan.free[depth];
    let deg = &plan.degrees[f];
    let mut used_here = used.clone();
    for v in 0..=plan.bounds[f] {
        if used_here > p.target_degree {
            break;
        }
        vals.push(v);
        search(p, plan, depth + 1, &used_here, vals, out);
        vals.pop();
        used_here += deg;
    }
}

/// All nonnegative multiplicity vectors meeting the degree and every constraint,
/// in lexicographic order.
pub fn solve_decomposition(p: &DecompositionProblem) -> Result<Vec<Vec<u64>>, SolverError> {
    p.validate()?;
    let Some(plan) = plan(p)? else {
        return Ok(Vec::new());
    };
    let mut out = if plan.free.is_empty() {
        let mut out = Vec::new();
        leaf(p, &plan, &[], &mut out);
        out
    } else {
        let f0 = plan.free[0];
        let deg = &plan.degrees[f0];
        let plan_ref = &plan;
        (0..=plan.bounds[f0])
            .into_par_iter()
            .map(|v| {
                let mut out = Vec::new();
                let used = deg * BigInt::from(v);
                if used <= p.target_degree {
                    let mut vals = vec![v];
                    search(p, plan_ref, 1, &used, &mut vals, &mut out);
                }
                out
            })
            .flatten()
            .collect()
    };
    out.sort();
    out.dedup();
    Ok(out)
}
