//! Scalar products, restriction and induction along fusions, permutation
//! characters from suborbits, and centralizer orders from permutation-character values.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::cyclonum::{sum_values, BigInt, BigRat, Cyclotomic};
use crate::tables::{ClassFunction, CtbError, FusionMap, RawBlock, TableHead};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharFunError {
    #[error("class function lives on {found}, expected {expected}")]
    HeadMismatch { expected: String, found: String },
    #[error("class function has {found} values, head {head} has {expected} classes")]
    Length {
        head: String,
        expected: usize,
        found: usize,
    },
    #[error("fusion {from} -> {to} is unresolved at class {class}")]
    Unresolved {
        from: String,
        to: String,
        class: String,
    },
    #[error("cannot locate the class of g^{power} for g in {class}: power maps are incomplete")]
    PowerMapGap { class: String, power: u64 },
    #[error("suborbit with stabilizer {stabilizer}: orbit length {found}, but |H|/|stabilizer| = {expected}")]
    OrbitLength {
        stabilizer: String,
        expected: String,
        found: BigInt,
    },
    #[error("{0} must be a positive rational integer")]
    NotPositiveInteger(String),
    #[error("centralizer order {0} is not an integer: the fusion hypothesis is wrong")]
    NonIntegral(BigRat),
    #[error("no subgroup classes fuse to the chosen class")]
    EmptyFusedList,
    #[error(
        "permutation character takes values {first} and {second} on classes fusing to {class}"
    )]
    Inconsistent {
        class: String,
        first: String,
        second: String,
    },
}

fn check_head(head: &TableHead, f: &ClassFunction) -> Result<(), CharFunError> {
    if f.head_id != head.id {
        return Err(CharFunError::HeadMismatch {
            expected: head.id.clone(),
            found: f.head_id.clone(),
        });
    }
    if f.values.len() != head.class_count() {
        return Err(CharFunError::Length {
            head: head.id.clone(),
            expected: head.class_count(),
            found: f.values.len(),
        });
    }
    Ok(())
}

fn resolved_fusion(fus: &FusionMap, sub: Option<&TableHead>) -> Result<Vec<usize>, CharFunError> {
    fus.entries
        .entries()
        .iter()
        .enumerate()
        .map(|(h, e)| {
            e.resolved().ok_or_else(|| CharFunError::Unresolved {
                from: fus.from_head.clone(),
                to: fus.to_head.clone(),
                class: sub
                    .map(|s| s.classes[h].name.clone())
                    .unwrap_or_else(|| h.to_string()),
            })
        })
        .collect()
}

fn recip(n: &BigInt) -> BigRat {
    BigRat::new(BigInt::one(), n.clone())
}

/// `(1/|G|) Σ |c| f(c) conj(g(c))`.
pub fn scalar_product(
    head: &TableHead,
    f: &ClassFunction,
    g: &ClassFunction,
) -> Result<Cyclotomic, CharFunError> {
    check_head(head, f)?;
    check_head(head, g)?;
    let sizes = head.class_sizes();
    let terms: Vec<Cyclotomic> = f
        .values
        .iter()
        .zip(&g.values)
        .zip(&sizes)
        .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
        .map(|((a, b), s)| (a * &b.conj()).scale(&BigRat::from_integer(s.clone())))
        .collect();
    Ok(sum_values(terms.iter()).scale(&recip(&head.group_order)))
}

pub fn norm(head: &TableHead, f: &ClassFunction) -> Result<Cyclotomic, CharFunError> {
    scalar_product(head, f, f)
}

/// Values of `f` on subgroup classes, `f(fus(h))`.
pub fn restrict(f: &ClassFunction, fus: &FusionMap) -> Result<ClassFunction, CharFunError> {
    if f.head_id != fus.to_head {
        return Err(CharFunError::HeadMismatch {
            expected: fus.to_head.clone(),
            found: f.head_id.clone(),
        });
    }
    let images = resolved_fusion(fus, None)?;
    let mut values = Vec::with_capacity(images.len());
    for g in images {
        let v = f.values.get(g).ok_or_else(|| CharFunError::Length {
            head: f.head_id.clone(),
            expected: g + 1,
            found: f.values.len(),
        })?;
        values.push(v.clone());
    }
    Ok(ClassFunction::new(fus.from_head.clone(), values))
}

/// `f^G(g) = |C_G(g)| Σ_{fus(h) = g} f(h) / |C_H(h)|`.
pub fn induce(
    f: &ClassFunction,
    sub: &TableHead,
    big: &TableHead,
    fus: &FusionMap,
) -> Result<ClassFunction, CharFunError> {
    check_head(sub, f)?;
    if fus.from_head != sub.id || fus.to_head != big.id {
        return Err(CharFunError::HeadMismatch {
            expected: format!("{} -> {}", sub.id, big.id),
            found: format!("{} -> {}", fus.from_head, fus.to_head),
        });
    }
    let images = resolved_fusion(fus, Some(sub))?;
    let mut buckets: Vec<Vec<Cyclotomic>> = vec![Vec::new(); big.class_count()];
    for (h, &g) in images.iter().enumerate() {
        if !f.values[h].is_zero() {
            buckets[g].push(f.values[h].scale(&recip(sub.centralizer(h))));
        }
    }
    let values = buckets
        .into_iter()
        .enumerate()
        .map(|(g, terms)| {
            sum_values(terms.iter()).scale(&BigRat::from_integer(big.centralizer(g).clone()))
        })
        .collect();
    Ok(ClassFunction::new(big.id.clone(), values))
}

/// Concurrent [`induce`] over a batch, results in input order.
pub fn induce_many(
    fs: &[ClassFunction],
    sub: &TableHead,
    big: &TableHead,
    fus: &FusionMap,
) -> Result<Vec<ClassFunction>, CharFunError> {
    fs.par_iter().map(|f| induce(f, sub, big, fus)).collect()
}

/// Classes of `g^m`, `0 ≤ m < order(c)`, for `g` in class `c`.
pub fn cyclic_fusion(head: &TableHead, c: usize) -> Result<Vec<usize>, CharFunError> {
    let n = head.order(c);
    (0..n)
        .map(|m| {
            head.power_class(c, m)
                .ok_or_else(|| CharFunError::PowerMapGap {
                    class: head.classes[c].name.clone(),
                    power: m,
                })
        })
        .collect()
}

/// Inductions of the `n` linear characters `g^m ↦ ζ_n^{jm}` of `⟨g⟩` (j ascending).
pub fn induce_from_cyclic(head: &TableHead, c: usize) -> Result<Vec<ClassFunction>, CharFunError> {
    let n = head.order(c);
    let classes = cyclic_fusion(head, c)?;
    let mut by_class: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for (m, &x) in classes.iter().enumerate() {
        by_class.entry(x).or_default().push(m as u64);
    }
    let inv_n = BigRat::new(BigInt::one(), BigInt::from(n));
    let out = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut values = vec![Cyclotomic::zero(); head.class_count()];
            for (&x, ms) in &by_class {
                let scale = BigRat::from_integer(head.centralizer(x).clone()) * &inv_n;
                let terms = ms.iter().map(|&m| (((j * m) % n) as i64, scale.clone()));
                values[x] = Cyclotomic::from_terms(n, terms);
            }
            ClassFunction::new(head.id.clone(), values)
        })
        .collect();
    Ok(out)
}

/// One row of a suborbit table where only the stabilizer order is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuborbitRow {
    pub stabilizer_id: String,
    pub orbit_length: BigInt,
    pub label: String,
}

/// A suborbit whose stabilizer table and fusion into the acting group are available.
#[derive(Debug, Clone, Copy)]
pub struct SuborbitDatum<'a> {
    pub stabilizer: &'a TableHead,
    pub fusion: &'a FusionMap,
    pub orbit_length: &'a BigInt,
}

/// Checks `length = |H| / |stabilizer|` for each row and returns the summed length.
pub fn orbit_lengths_total(
    acting_order: &BigInt,
    rows: &[(SuborbitRow, BigInt)],
) -> Result<BigInt, CharFunError> {
    let mut total = BigInt::zero();
    for (row, stab_order) in rows {
        if stab_order.is_zero() || &row.orbit_length * stab_order != *acting_order {
            let expected = if !stab_order.is_zero() && (acting_order % stab_order).is_zero() {
                (acting_order / stab_order).to_string()
            } else {
                format!("{acting_order}/{stab_order}")
            };
            return Err(CharFunError::OrbitLength {
                stabilizer: row.stabilizer_id.clone(),
                expected,
                found: row.orbit_length.clone(),
            });
        }
        total += &row.orbit_length;
    }
    Ok(total)
}

/// `Σ 1_{stab}^H` over the suborbits: the permutation character restricted to `H`.
pub fn perm_char_restricted(
    suborbits: &[SuborbitDatum<'_>],
    acting: &TableHead,
) -> Result<ClassFunction, CharFunError> {
    let mut acc = ClassFunction::new(
        acting.id.clone(),
        vec![Cyclotomic::zero(); acting.class_count()],
    );
    for s in suborbits {
        let expected = &acting.group_order;
        if s.stabilizer.group_order.is_zero()
            || s.orbit_length * &s.stabilizer.group_order != *expected
        {
            return Err(CharFunError::OrbitLength {
                stabilizer: s.stabilizer.id.clone(),
                expected: format!("{}/{}", expected, s.stabilizer.group_order),
                found: s.orbit_length.clone(),
            });
        }
        let ind = induce(
            &s.stabilizer.trivial_character(),
            s.stabilizer,
            acting,
            s.fusion,
        )?;
        acc = acc.add(&ind);
    }
    Ok(acc)
}

/// `|C_G(g)|` from `v = 1_H^G(g) = |C_G(g)| Σ_i 1/|C_H(h_i)|`.
pub fn centralizer_from_perm_char(
    v: &Cyclotomic,
    fused: &[(usize, BigInt)],
) -> Result<BigInt, CharFunError> {
    let v = match v.as_integer() {
        Ok(n) if n.is_positive() => n,
        _ => return Err(CharFunError::NotPositiveInteger(v.to_string())),
    };
    if fused.is_empty() {
        return Err(CharFunError::EmptyFusedList);
    }
    let mut s = BigRat::zero();
    for (_, c) in fused {
        if !c.is_positive() {
            return Err(CharFunError::NotPositiveInteger(c.to_string()));
        }
        s += recip(c);
    }
    let r = BigRat::from_integer(v) / s;
    if !r.is_integer() {
        return Err(CharFunError::NonIntegral(r));
    }
    Ok(r.to_integer())
}

/// For every `G`-class met by `H`, the centralizer order implied by the restricted
/// permutation character, keyed by `G`-class index.
pub fn derive_centralizers(
    perm_restricted: &ClassFunction,
    sub: &TableHead,
    big: &TableHead,
    fus: &FusionMap,
) -> Result<BTreeMap<usize, BigInt>, CharFunError> {
    check_head(sub, perm_restricted)?;
    let images = resolved_fusion(fus, Some(sub))?;
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (h, &g) in images.iter().enumerate() {
        groups.entry(g).or_default().push(h);
    }
    let mut out = BTreeMap::new();
    for (g, hs) in groups {
        let v = &perm_restricted.values[hs[0]];
        for &h in &hs[1..] {
            if perm_restricted.values[h] != *v {
                return Err(CharFunError::Inconsistent {
                    class: big.classes[g].name.clone(),
                    first: v.to_string(),
                    second: perm_restricted.values[h].to_string(),
                });
            }
        }
        let fused: Vec<(usize, BigInt)> = hs
            .iter()
            .map(|&h| (h, sub.centralizer(h).clone()))
            .collect();
        out.insert(g, centralizer_from_perm_char(v, &fused)?);
    }
    Ok(out)
}

/// A parsed `SUBORBITS <acting-id>` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuborbitSpec {
    pub acting: String,
    pub parent: Option<String>,
    pub rows: Vec<SuborbitRow>,
    /// irreducible degrees of the acting group, in table order
    pub degrees: Option<Vec<BigInt>>,
    /// per row label, multiplicities of the acting group's irreducibles
    pub multiplicities: BTreeMap<String, Vec<BigInt>>,
}

/// `SUBORBITS <H>` / `PARENT <G>` / `SUBORBIT <stabilizer-id> <length> [label]` /
/// `DEGREES <d1> ...` / `CONSTITUENTS <label> <1-based indices, repeats allowed>` /
/// `MULTIPLICITIES <label> <m1> ...` / `END`.
pub fn parse_suborbits(block: &RawBlock) -> Result<SuborbitSpec, CtbError> {
    let acting = block.name.trim().to_string();
    if acting.is_empty() || acting.contains(' ') {
        return Err(CtbError::syntax(
            block.line,
            "SUBORBITS expects one acting-group id",
        ));
    }
    let mut spec = SuborbitSpec {
        acting,
        parent: None,
        rows: Vec::new(),
        degrees: None,
        multiplicities: BTreeMap::new(),
    };
    let mut constituents = Vec::new();
    for l in &block.lines {
        match l.keyword() {
            "PARENT" => {
                l.arity(1)?;
                spec.parent = Some(l.arg(0)?.to_string());
            }
            "SUBORBIT" => {
                if l.tokens.len() < 3 {
                    return Err(l.error("SUBORBIT expects <stabilizer-id> <orbit-length> [label]"));
                }
                spec.rows.push(SuborbitRow {
                    stabilizer_id: l.arg(0)?.to_string(),
                    orbit_length: crate::tables::parse_big(l.line, l.arg(1)?)?,
                    label: l.tokens[3..].join(" "),
                });
            }
            "DEGREES" => {
                let d = l
                    .args()
                    .iter()
                    .map(|a| crate::tables::parse_big(l.line, a))
                    .collect::<Result<_, _>>()?;
                spec.degrees = Some(d);
            }
            "CONSTITUENTS" => {
                let idx = l.args()[1..]
                    .iter()
                    .map(|a| crate::tables::parse_usize(l.line, a))
                    .collect::<Result<Vec<_>, _>>()?;
                constituents.push((l, l.arg(0)?.to_string(), idx));
            }
            "MULTIPLICITIES" => {
                let m = l.args()[1..]
                    .iter()
                    .map(|a| crate::tables::parse_big(l.line, a))
                    .collect::<Result<_, _>>()?;
                if spec
                    .multiplicities
                    .insert(l.arg(0)?.to_string(), m)
                    .is_some()
                {
                    return Err(l.error("duplicate multiplicities"));
                }
            }
            other => return Err(l.error(format!("unexpected {other} in SUBORBITS"))),
        }
    }
    for (l, label, idx) in constituents {
        let n = spec
            .degrees
            .as_ref()
            .ok_or_else(|| l.error("CONSTITUENTS needs DEGREES"))?
            .len();
        let mut m = vec![BigInt::zero(); n];
        for i in idx {
            if i == 0 || i > n {
                return Err(l.error(format!("constituent {i} outside 1..{n}")));
            }
            m[i - 1] += 1;
        }
        if spec.multiplicities.insert(label, m).is_some() {
            return Err(l.error("duplicate multiplicities"));
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::parse_table;

    fn s3() -> TableHead {
        parse_table(include_str!("../../../fixtures/s3.ctb"))
            .unwrap()
            .head
    }

    #[test]
    fn s3_scalar_products() {
        let h = s3();
        let chi = ClassFunction::from_integers("S3", &[2, 0, -1]);
        assert_eq!(norm(&h, &chi).unwrap(), Cyclotomic::one());
        let perm = ClassFunction::from_integers("S3", &[3, 1, 0]);
        assert_eq!(
            scalar_product(&h, &perm, &h.trivial_character()).unwrap(),
            Cyclotomic::one()
        );
        let other = ClassFunction::from_integers("C3", &[1, 1, 1]);
        assert!(matches!(
            scalar_product(&h, &other, &chi),
            Err(CharFunError::HeadMismatch { .. })
        ));
    }

    #[test]
    fn centralizer_examples() {
        let one = Cyclotomic::one();
        assert_eq!(
            centralizer_from_perm_char(&one, &[(0, 7.into())]).unwrap(),
            BigInt::from(7)
        );
        assert_eq!(
            centralizer_from_perm_char(&Cyclotomic::from(2), &[(1, 2.into())]).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            centralizer_from_perm_char(&one, &[(2, 3.into())]).unwrap(),
            BigInt::from(3)
        );
        assert!(matches!(
            centralizer_from_perm_char(&one, &[(1, 2.into()), (2, 3.into())]),
            Err(CharFunError::NonIntegral(_))
        ));
        assert!(centralizer_from_perm_char(&Cyclotomic::zero(), &[(1, 2.into())]).is_err());
    }

    #[test]
    fn cyclic_inductions_sum_to_regular_induction() {
        let h = s3();
        let inds = induce_from_cyclic(&h, 2).unwrap();
        assert_eq!(inds.len(), 3);
        let total = inds.iter().skip(1).fold(inds[0].clone(), |a, b| a.add(b));
        // regular character of C3 induced to S3: 6 at the identity, 0 elsewhere
        assert_eq!(total, ClassFunction::from_integers("S3", &[6, 0, 0]));
        assert_eq!(inds[0], ClassFunction::from_integers("S3", &[2, 0, 2]));
        assert_eq!(inds[1], ClassFunction::from_integers("S3", &[2, 0, -1]));
        let id = induce_from_cyclic(&h, 0).unwrap();
        assert_eq!(id, vec![ClassFunction::from_integers("S3", &[6, 0, 0])]);
    }
}
