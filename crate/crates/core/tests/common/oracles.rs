// Independent brute-force oracles shared by integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ctk_core::solvers::{Candidate, Constraint, DecompositionProblem};
use ctk_core::tables::TableHead;
use ctk_core::{BigInt, Cyclotomic};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

/// Every multiplicity vector with `m_i ≤ target/deg_i`, filtered by direct evaluation.
pub fn naive_decompose(p: &DecompositionProblem) -> Vec<Vec<u64>> {
    let n = p.candidates.len();
    let bounds: Vec<u64> = p
        .candidates
        .iter()
        .map(|c| (&p.target_degree / &c.degree).to_u64().unwrap())
        .collect();
    let mut touched = BTreeSet::new();
    for con in &p.constraints {
        match con {
            Constraint::MaxDistinctValues { classes, .. } => {
                touched.extend(classes.iter().copied())
            }
            Constraint::FixedValue { class, .. } => {
                touched.insert(*class);
            }
            _ => {}
        }
    }
    let value = |m: &[u64], k: usize| -> Option<Cyclotomic> {
        let mut acc = Cyclotomic::zero();
        for (c, &mi) in p.candidates.iter().zip(m) {
            if mi > 0 {
                acc = acc + c.values[k].clone()? * Cyclotomic::from(mi as i64);
            }
        }
        Some(acc)
    };
    let mut out = Vec::new();
    let mut m = vec![0u64; n];
    'outer: loop {
        let deg: BigInt = p
            .candidates
            .iter()
            .zip(&m)
            .map(|(c, &mi)| &c.degree * BigInt::from(mi))
            .sum();
        let known = p
            .candidates
            .iter()
            .zip(&m)
            .all(|(c, &mi)| mi == 0 || touched.iter().all(|&k| c.values[k].is_some()));
        if deg == p.target_degree && known {
            let ok = p.constraints.iter().all(|con| match con {
                Constraint::MaxDistinctValues { classes, k } => {
                    let vals: Option<BTreeSet<Cyclotomic>> =
                        classes.iter().map(|&c| value(&m, c)).collect();
                    vals.map_or(false, |v| v.len() <= *k)
                }
                Constraint::FixedValue { class, value: v } => value(&m, *class).as_ref() == Some(v),
                Constraint::MultiplicityBound { candidate, max } => m[*candidate] <= *max,
                Constraint::ExcludeSolution(x) => *x != m,
            });
            if ok {
                out.push(m.clone());
            }
        }
        for i in (0..n).rev() {
            if m[i] < bounds[i] {
                m[i] += 1;
                continue 'outer;
            }
            m[i] = 0;
        }
        break;
    }
    out
}

/// All class maps satisfying identity, order, centralizer and power-map conditions.
pub fn brute_fusions(sub: &TableHead, big: &TableHead) -> Vec<Vec<usize>> {
    let n = sub.class_count();
    let mut out = Vec::new();
    let mut img = vec![0usize; n];
    'outer: loop {
        if admissible_fusion(sub, big, &img) {
            out.push(img.clone());
        }
        for i in (0..n).rev() {
            if img[i] + 1 < big.class_count() {
                img[i] += 1;
                continue 'outer;
            }
            img[i] = 0;
        }
        break;
    }
    out
}

pub fn admissible_fusion(sub: &TableHead, big: &TableHead, img: &[usize]) -> bool {
    if img[0] != 0 {
        return false;
    }
    for (h, &g) in img.iter().enumerate() {
        if sub.classes[h].element_order != big.classes[g].element_order {
            return false;
        }
        if !(&big.classes[g].centralizer_order % &sub.classes[h].centralizer_order).is_zero() {
            return false;
        }
    }
    for (p, smap) in &sub.power_maps {
        let Some(bmap) = big.power_maps.get(p) else {
            continue;
        };
        for h in 0..img.len() {
            if let (Some(hp), Some(gp)) = (smap.resolved(h), bmap.resolved(img[h])) {
                if img[hp] != gp {
                    return false;
                }
            }
        }
    }
    true
}

fn small_value() -> impl Strategy<Value = Option<Cyclotomic>> {
    prop_oneof![
        1 => Just(None),
        6 => (-3i64..=3).prop_map(|v| Some(Cyclotomic::from(v))),
        2 => (-2i64..=2, -2i64..=2).prop_map(|(a, b)| {
            Some(Cyclotomic::from(a) + Cyclotomic::root_of_unity(3, 1) * Cyclotomic::from(b))
        }),
    ]
}

/// Random problems with at most 8 candidates on 3 designated classes.
pub fn decomposition_problem() -> impl Strategy<Value = DecompositionProblem> {
    (1usize..=8)
        .prop_flat_map(|n| {
            (
                prop::collection::vec((1u32..=6, prop::collection::vec(small_value(), 3)), n),
                4u32..=14,
                prop::collection::vec(0u8..6, 0..=3),
                prop::collection::vec((0usize..8, 0u64..3), 0..=2),
            )
        })
        .prop_map(|(cands, target, kinds, bounds)| {
            let n = cands.len();
            let candidates: Vec<Candidate> = cands
                .into_iter()
                .enumerate()
                .map(|(i, (d, values))| Candidate {
                    name: format!("c{i}"),
                    degree: BigInt::from(d),
                    values,
                })
                .collect();
            let mut constraints = Vec::new();
            for (j, kind) in kinds.into_iter().enumerate() {
                constraints.push(match kind {
                    0 | 1 => Constraint::MaxDistinctValues {
                        classes: vec![0, 1, 2],
                        k: 1 + kind as usize,
                    },
                    2 => Constraint::MaxDistinctValues {
                        classes: vec![j % 3, (j + 1) % 3],
                        k: 1,
                    },
                    3 | 4 => Constraint::FixedValue {
                        class: j % 3,
                        value: Cyclotomic::from(kind as i64 - 3),
                    },
                    _ => Constraint::ExcludeSolution((0..n as u64).map(|i| i % 2).collect()),
                });
            }
            for (c, max) in bounds {
                constraints.push(Constraint::MultiplicityBound {
                    candidate: c % n,
                    max,
                });
            }
            DecompositionProblem {
                name: "random".into(),
                classes: vec!["x".into(), "y".into(), "z".into()],
                candidates,
                target_degree: BigInt::from(target),
                constraints,
            }
        })
}
