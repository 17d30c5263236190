//! Enumeration of class fusions compatible with element orders, centralizer
//! orders and power maps.

use std::collections::{BTreeMap, BTreeSet};

use super::SolverError;
use crate::cyclonum::Cyclotomic;
use crate::tables::{ClassFunction, FusionMap, MapEntry, PartialClassMap, TableHead};

type Domains = Vec<BTreeSet<usize>>;

struct Ctx<'a> {
    sub: &'a TableHead,
    big: &'a TableHead,
    // (p, h, h^p) for resolved subgroup power maps with a big-group map for p
    links: Vec<(u64, usize, usize)>,
}

impl Ctx<'_> {
    fn big_image(&self, p: u64, g: usize) -> &MapEntry {
        self.big.power_map(p).expect("linked prime").get(g)
    }

    // Arc consistency over the power-map links; false on a wipe-out.
    fn propagate(&self, d: &mut Domains) -> bool {
        loop {
            let mut changed = false;
            for &(p, h, hp) in &self.links {
                // images of h^p allowed by D[h]
                let mut reach = BTreeSet::new();
                let mut unconstrained = false;
                for &g in &d[h] {
                    match self.big_image(p, g).candidates() {
                        Some(s) => reach.extend(s),
                        None => unconstrained = true,
                    }
                }
                if !unconstrained {
                    let before = d[hp].len();
                    d[hp].retain(|x| reach.contains(x));
                    changed |= d[hp].len() != before;
                }
                // images of h with support in D[h^p]
                let before = d[h].len();
                let target = d[hp].clone();
                d[h].retain(|&g| match self.big_image(p, g).candidates() {
                    Some(s) => s.iter().any(|x| target.contains(x)),
                    None => true,
                });
                changed |= d[h].len() != before;
                if d[h].is_empty() || d[hp].is_empty() {
                    return false;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&self, d: Domains, out: &mut Vec<Vec<usize>>) {
        let pick = (0..d.len())
            .filter(|&h| d[h].len() > 1)
            .min_by_key(|&h| (d[h].len(), h));
        let Some(h) = pick else {
            let images: Vec<usize> = d
                .iter()
                .map(|s| *s.iter().next().expect("nonempty"))
                .collect();
            let f = self.fusion(&images);
            if f.validate(self.sub, self.big).is_ok() {
                out.push(images);
            }
            return;
        };
        for &g in &d[h] {
            let mut next = d.clone();
            next[h] = BTreeSet::from([g]);
            if self.propagate(&mut next) {
                self.search(next, out);
            }
        }
    }

    fn fusion(&self, images: &[usize]) -> FusionMap {
        FusionMap {
            from_head: self.sub.id.clone(),
            to_head: self.big.id.clone(),
            entries: PartialClassMap::from_resolved(images),
        }
    }
}

/// All total fusions extending `seed` that respect element orders, centralizer
/// divisibility and every resolved power map, sorted by their image vectors.
pub fn possible_fusions(
    sub: &TableHead,
    big: &TableHead,
    seed: &FusionMap,
) -> Result<Vec<FusionMap>, SolverError> {
    if seed.from_head != sub.id || seed.to_head != big.id || seed.entries.len() != sub.class_count()
    {
        return Err(SolverError::InconsistentSeed(format!(
            "seed {} -> {} with {} entries does not match heads {} ({} classes) and {}",
            seed.from_head,
            seed.to_head,
            seed.entries.len(),
            sub.id,
            sub.class_count(),
            big.id
        )));
    }
    let mut d: Domains = Vec::with_capacity(sub.class_count());
    for h in 0..sub.class_count() {
        let allowed: BTreeSet<usize> = (0..big.class_count())
            .filter(|&g| FusionMap::image_allowed(sub, big, h, g))
            .collect();
        if allowed.is_empty() {
            // no fusion exists at all, independent of the seed
            return Ok(Vec::new());
        }
        let set: BTreeSet<usize> = allowed
            .into_iter()
            .filter(|&g| seed.entries.get(h).allows(g))
            .collect();
        if set.is_empty() {
            return Err(SolverError::InconsistentSeed(format!(
                "class {} of {} has no admissible image in {}",
                sub.classes[h].name, sub.id, big.id
            )));
        }
        d.push(set);
    }
    let mut links = Vec::new();
    for (&p, smap) in &sub.power_maps {
        if big.power_map(p).is_none() {
            continue;
        }
        for h in 0..sub.class_count() {
            if let Some(hp) = smap.resolved(h) {
                links.push((p, h, hp));
            }
        }
    }
    let ctx = Ctx { sub, big, links };
    let mut out = Vec::new();
    if ctx.propagate(&mut d) {
        ctx.search(d, &mut out);
    }
    out.sort();
    out.dedup();
    Ok(out.iter().map(|m| ctx.fusion(m)).collect())
}

/// Groups fusions (by index) whose restrictions of `characters` coincide,
/// groups ordered by first member.
pub fn group_by_restriction(
    fusions: &[FusionMap],
    characters: &[ClassFunction],
) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<Vec<Vec<Cyclotomic>>, Vec<usize>> = BTreeMap::new();
    for (i, f) in fusions.iter().enumerate() {
        let images = f.resolved().expect("total fusion");
        let key: Vec<Vec<Cyclotomic>> = characters
            .iter()
            .map(|chi| images.iter().map(|&g| chi.values[g].clone()).collect())
            .collect();
        groups.entry(key).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}
