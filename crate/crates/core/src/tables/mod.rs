//! Table heads, class functions, class maps, and the CTB text format.

mod ctb;
mod library;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{gcd_u64, prime_divisors_u64};
use crate::cyclonum::{BigInt, Cyclotomic};

pub use ctb::{
    parse_big, parse_document, parse_entries, parse_entry, parse_table, parse_usize, parse_value,
    serialize_table, CtbDocument, CtbError, RawBlock, RawLine, TableBundle,
};
pub use library::{LibraryError, TableLibrary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("class {class}: {condition}")]
    Invariant { class: String, condition: String },
    #[error("class equation fails: sum of class sizes is {sum}, group order is {order}")]
    ClassEquation { sum: BigInt, order: BigInt },
    #[error("table {table}: {message}")]
    Shape { table: String, message: String },
    #[error("fusion {from} -> {to}, class {class}: {condition}")]
    Fusion {
        from: String,
        to: String,
        class: String,
        condition: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassRecord {
    pub name: String,
    pub element_order: u64,
    pub centralizer_order: BigInt,
}

/// One value of a partial class map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MapEntry {
    Unknown,
    Resolved(usize),
    /// At least two candidates; singletons are always `Resolved`.
    Candidates(BTreeSet<usize>),
}

impl MapEntry {
    /// Normalizes a candidate set; `None` when it is empty.
    pub fn from_set(set: BTreeSet<usize>) -> Option<Self> {
        match set.len() {
            0 => None,
            1 => set.into_iter().next().map(MapEntry::Resolved),
            _ => Some(MapEntry::Candidates(set)),
        }
    }

    pub fn resolved(&self) -> Option<usize> {
        match self {
            MapEntry::Resolved(c) => Some(*c),
            _ => None,
        }
    }

    /// Explicit candidates; `None` for `Unknown`.
    pub fn candidates(&self) -> Option<BTreeSet<usize>> {
        match self {
            MapEntry::Unknown => None,
            MapEntry::Resolved(c) => Some(BTreeSet::from([*c])),
            MapEntry::Candidates(s) => Some(s.clone()),
        }
    }

    pub fn allows(&self, c: usize) -> bool {
        match self {
            MapEntry::Unknown => true,
            MapEntry::Resolved(x) => *x == c,
            MapEntry::Candidates(s) => s.contains(&c),
        }
    }

    /// Whether `self` is at least as refined as `other`.
    pub fn refines(&self, other: &MapEntry) -> bool {
        match (self.candidates(), other.candidates()) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a.is_subset(&b),
        }
    }
}

impl fmt::Display for MapEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapEntry::Unknown => f.write_str("?"),
            MapEntry::Resolved(c) => write!(f, "{c}"),
            MapEntry::Candidates(s) => {
                let parts: Vec<String> = s.iter().map(|c| c.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialClassMap {
    entries: Vec<MapEntry>,
}

impl PartialClassMap {
    pub fn new(entries: Vec<MapEntry>) -> Self {
        PartialClassMap { entries }
    }

    pub fn from_resolved(images: &[usize]) -> Self {
        Self::new(images.iter().map(|&c| MapEntry::Resolved(c)).collect())
    }

    pub fn unknown(len: usize) -> Self {
        Self::new(vec![MapEntry::Unknown; len])
    }

    pub fn entries(&self) -> &[MapEntry] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [MapEntry] {
        &mut self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, c: usize) -> &MapEntry {
        &self.entries[c]
    }

    pub fn resolved(&self, c: usize) -> Option<usize> {
        self.entries.get(c).and_then(MapEntry::resolved)
    }

    /// All images, when every entry is resolved.
    pub fn as_resolved(&self) -> Option<Vec<usize>> {
        self.entries.iter().map(MapEntry::resolved).collect()
    }

    pub fn is_resolved(&self) -> bool {
        self.entries.iter().all(|e| e.resolved().is_some())
    }

    pub fn refines(&self, other: &PartialClassMap) -> bool {
        self.len() == other.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.refines(b))
    }
}

impl fmt::Display for PartialClassMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableHead {
    pub id: String,
    pub group_order: BigInt,
    pub classes: Vec<ClassRecord>,
    pub power_maps: BTreeMap<u64, PartialClassMap>,
}

impl TableHead {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    pub fn order(&self, c: usize) -> u64 {
        self.classes[c].element_order
    }

    pub fn centralizer(&self, c: usize) -> &BigInt {
        &self.classes[c].centralizer_order
    }

    pub fn class_size(&self, c: usize) -> Result<BigInt, TableError> {
        let rec = &self.classes[c];
        let (q, r) = self.group_order.div_rem(&rec.centralizer_order);
        if !r.is_zero() || !rec.centralizer_order.is_positive() {
            return Err(TableError::Invariant {
                class: rec.name.clone(),
                condition: format!(
                    "centralizer order {} does not divide group order {}",
                    rec.centralizer_order, self.group_order
                ),
            });
        }
        Ok(q)
    }

    /// Class sizes of a validated head.
    pub fn class_sizes(&self) -> Vec<BigInt> {
        (0..self.class_count())
            .map(|c| self.class_size(c).expect("validated head"))
            .collect()
    }

    pub fn power_map(&self, p: u64) -> Option<&PartialClassMap> {
        self.power_maps.get(&p)
    }

    /// Class of `g^m` for `g` in class `c`, following resolved power maps prime by prime.
    pub fn power_class(&self, c: usize, m: u64) -> Option<usize> {
        let mut cur = c;
        let mut m = m;
        loop {
            let n = self.order(cur);
            m %= n;
            if m == 0 {
                return Some(0);
            }
            if m == 1 {
                return Some(cur);
            }
            let p = prime_divisors_u64(m)[0];
            cur = self.power_map(p)?.resolved(cur)?;
            m /= p;
        }
    }

    /// Whether class `c` is closed under all coprime powers; `None` if power maps are missing.
    pub fn is_rational_class(&self, c: usize) -> Option<bool> {
        let n = self.order(c);
        let mut p = 2;
        while p < n {
            if crate::arith::is_prime_u64(p) && n % p != 0 {
                let img = self.power_map(p)?.resolved(c)?;
                if img != c {
                    return Some(false);
                }
            }
            p += 1;
        }
        Some(true)
    }

    pub fn trivial_character(&self) -> ClassFunction {
        ClassFunction {
            head_id: self.id.clone(),
            values: vec![Cyclotomic::one(); self.class_count()],
        }
    }

    pub fn identity_fusion(&self) -> FusionMap {
        FusionMap {
            from_head: self.id.clone(),
            to_head: self.id.clone(),
            entries: PartialClassMap::from_resolved(&(0..self.class_count()).collect::<Vec<_>>()),
        }
    }

    fn invariant(&self, c: usize, condition: String) -> TableError {
        TableError::Invariant {
            class: self.classes[c].name.clone(),
            condition,
        }
    }

    /// Checks every stated head invariant.
    pub fn validate(&self) -> Result<(), TableError> {
        if self.classes.is_empty() {
            return Err(TableError::Shape {
                table: self.id.clone(),
                message: "no classes".into(),
            });
        }
        if !self.group_order.is_positive() {
            return Err(TableError::Shape {
                table: self.id.clone(),
                message: format!("group order {} is not positive", self.group_order),
            });
        }
        let first = &self.classes[0];
        if first.element_order != 1 || first.centralizer_order != self.group_order {
            return Err(self.invariant(
                0,
                "class 0 must be the identity: order 1, centralizer = group order".into(),
            ));
        }
        let mut sum = BigInt::zero();
        for c in 0..self.class_count() {
            sum += self.class_size(c)?;
        }
        if sum != self.group_order {
            return Err(TableError::ClassEquation {
                sum,
                order: self.group_order.clone(),
            });
        }
        for (c, rec) in self.classes.iter().enumerate() {
            if rec.element_order == 0 {
                return Err(self.invariant(c, "element order must be positive".into()));
            }
            if c > 0 && rec.element_order == 1 {
                return Err(self.invariant(c, "only class 0 may have element order 1".into()));
            }
            if !(&rec.centralizer_order % BigInt::from(rec.element_order)).is_zero() {
                return Err(self.invariant(
                    c,
                    format!(
                        "element order {} does not divide centralizer order {}",
                        rec.element_order, rec.centralizer_order
                    ),
                ));
            }
        }
        for (&p, map) in &self.power_maps {
            if !crate::arith::is_prime_u64(p) {
                return Err(TableError::Shape {
                    table: self.id.clone(),
                    message: format!("power map for non-prime {p}"),
                });
            }
            if map.len() != self.class_count() {
                return Err(TableError::Shape {
                    table: self.id.clone(),
                    message: format!(
                        "power map {p} has {} entries, expected {}",
                        map.len(),
                        self.class_count()
                    ),
                });
            }
            for (c, entry) in map.entries().iter().enumerate() {
                let Some(cands) = entry.candidates() else {
                    continue;
                };
                for img in cands {
                    self.check_power_image(p, c, img)?;
                }
            }
        }
        Ok(())
    }

    /// Order arithmetic and centralizer divisibility for a single power-map image.
    pub fn power_image_allowed(&self, p: u64, c: usize, img: usize) -> bool {
        self.check_power_image(p, c, img).is_ok()
    }

    fn check_power_image(&self, p: u64, c: usize, img: usize) -> Result<(), TableError> {
        if img >= self.class_count() {
            return Err(self.invariant(c, format!("power map {p} image {img} out of range")));
        }
        let n = self.order(c);
        let want = n / gcd_u64(n, p);
        if self.order(img) != want {
            return Err(self.invariant(
                c,
                format!(
                    "power map {p}: image {} has order {}, expected {}",
                    self.classes[img].name,
                    self.order(img),
                    want
                ),
            ));
        }
        if !(self.centralizer(img) % self.centralizer(c)).is_zero() {
            return Err(self.invariant(
                c,
                format!(
                    "power map {p}: centralizer {} does not divide centralizer {} of {}",
                    self.centralizer(c),
                    self.centralizer(img),
                    self.classes[img].name
                ),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassFunction {
    pub head_id: String,
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(head_id: impl Into<String>, values: Vec<Cyclotomic>) -> Self {
        ClassFunction {
            head_id: head_id.into(),
            values,
        }
    }

    pub fn from_integers(head_id: impl Into<String>, values: &[i64]) -> Self {
        Self::new(
            head_id,
            values.iter().map(|&v| Cyclotomic::from(v)).collect(),
        )
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.values.len(), other.values.len());
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        ClassFunction {
            head_id: self.head_id.clone(),
            values,
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> ClassFunction {
        let r = crate::cyclonum::BigRat::from_integer(k.clone());
        ClassFunction {
            head_id: self.head_id.clone(),
            values: self.values.iter().map(|v| v.scale(&r)).collect(),
        }
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    pub name: String,
    pub function: ClassFunction,
    pub claimed_irreducible: bool,
}

impl Character {
    pub fn values(&self) -> &[Cyclotomic] {
        &self.function.values
    }

    pub fn degree(&self) -> BigInt {
        self.function.values[0]
            .as_integer()
            .expect("validated character degree")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FusionMap {
    pub from_head: String,
    pub to_head: String,
    pub entries: PartialClassMap,
}

impl FusionMap {
    pub fn resolved(&self) -> Option<Vec<usize>> {
        self.entries.as_resolved()
    }

    fn fail(&self, sub: &TableHead, h: usize, condition: String) -> TableError {
        TableError::Fusion {
            from: self.from_head.clone(),
            to: self.to_head.clone(),
            class: sub
                .classes
                .get(h)
                .map(|c| c.name.clone())
                .unwrap_or_else(|| h.to_string()),
            condition,
        }
    }

    /// Whether `g` is an order- and centralizer-compatible image of `h`.
    pub fn image_allowed(sub: &TableHead, big: &TableHead, h: usize, g: usize) -> bool {
        g < big.class_count()
            && sub.order(h) == big.order(g)
            && (big.centralizer(g) % sub.centralizer(h)).is_zero()
            && (h != 0 || g == 0)
    }

    /// Checks all fusion invariants, including commutativity with resolved power maps.
    pub fn validate(&self, sub: &TableHead, big: &TableHead) -> Result<(), TableError> {
        if self.from_head != sub.id || self.to_head != big.id {
            return Err(TableError::Shape {
                table: sub.id.clone(),
                message: format!(
                    "fusion {} -> {} used with heads {} and {}",
                    self.from_head, self.to_head, sub.id, big.id
                ),
            });
        }
        if self.entries.len() != sub.class_count() {
            return Err(self.fail(
                sub,
                0,
                format!(
                    "{} entries for {} classes",
                    self.entries.len(),
                    sub.class_count()
                ),
            ));
        }
        if !self.entries.get(0).allows(0) {
            return Err(self.fail(sub, 0, "identity must map to identity".into()));
        }
        for h in 0..sub.class_count() {
            let Some(cands) = self.entries.get(h).candidates() else {
                continue;
            };
            for g in cands {
                if g >= big.class_count() {
                    return Err(self.fail(sub, h, format!("image {g} out of range")));
                }
                if sub.order(h) != big.order(g) {
                    return Err(self.fail(
                        sub,
                        h,
                        format!(
                            "element order {} differs from order {} of {}",
                            sub.order(h),
                            big.order(g),
                            big.classes[g].name
                        ),
                    ));
                }
                if !(big.centralizer(g) % sub.centralizer(h)).is_zero() {
                    return Err(self.fail(
                        sub,
                        h,
                        format!(
                            "centralizer {} does not divide {} of {}",
                            sub.centralizer(h),
                            big.centralizer(g),
                            big.classes[g].name
                        ),
                    ));
                }
            }
        }
        for (p, smap) in &sub.power_maps {
            let Some(bmap) = big.power_map(*p) else {
                continue;
            };
            for h in 0..sub.class_count() {
                let (Some(hp), Some(g)) = (smap.resolved(h), self.entries.resolved(h)) else {
                    continue;
                };
                let Some(gp) = self.entries.resolved(hp) else {
                    continue;
                };
                if !bmap.get(g).allows(gp) {
                    return Err(self.fail(
                        sub,
                        h,
                        format!("fusion does not commute with the {p}-th power map"),
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn s3() -> TableHead {
        let cls = |name: &str, o: u64, c: i64| ClassRecord {
            name: name.into(),
            element_order: o,
            centralizer_order: c.into(),
        };
        TableHead {
            id: "S3".into(),
            group_order: 6.into(),
            classes: vec![cls("1a", 1, 6), cls("2a", 2, 2), cls("3a", 3, 3)],
            power_maps: BTreeMap::from([
                (2, PartialClassMap::from_resolved(&[0, 0, 2])),
                (3, PartialClassMap::from_resolved(&[0, 1, 0])),
            ]),
        }
    }

    #[test]
    fn class_sizes_and_validation() {
        let h = s3();
        h.validate().unwrap();
        assert_eq!(h.class_size(0).unwrap(), BigInt::one());
        assert_eq!(h.class_size(1).unwrap(), BigInt::from(3));
        assert_eq!(h.power_class(2, 4), Some(2));
        assert_eq!(h.power_class(1, 3), Some(1));
        assert_eq!(h.is_rational_class(2), Some(true));
    }

    #[test]
    fn broken_centralizer_breaks_class_equation() {
        let mut h = s3();
        h.classes[1].centralizer_order = 3.into();
        assert!(matches!(
            h.validate(),
            Err(TableError::ClassEquation { .. })
        ));
    }

    #[test]
    fn entry_normalization() {
        assert_eq!(
            MapEntry::from_set(BTreeSet::from([4])),
            Some(MapEntry::Resolved(4))
        );
        assert_eq!(MapEntry::from_set(BTreeSet::new()), None);
        let e = MapEntry::from_set(BTreeSet::from([2, 1])).unwrap();
        assert_eq!(e.to_string(), "{1,2}");
        assert!(MapEntry::Resolved(1).refines(&e));
        assert!(!MapEntry::Unknown.refines(&e));
    }
}
