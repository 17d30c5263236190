use std::collections::BTreeSet;

use anyhow::{anyhow, bail, Context, Result};
use ctk_core::charfun::{induce, parse_suborbits};
use ctk_core::completion::{
    complete_character, norms, parse_partial, ConstituentSource, EventKind, Rule,
};
use ctk_core::report::Report;
use ctk_core::solvers::{
    contains_truth, group_by_restriction, parse_decomp, parse_fusion_problem, parse_power_problem,
    parse_sylow, possible_fusions, refine_power_maps_with, solve_decomposition, sylow_feasible,
    SolverError,
};
use ctk_core::tables::{
    parse_entries, parse_value, Character, ClassFunction, FusionMap, PartialClassMap, TableHead,
};
use ctk_core::verify::{
    check_suborbit_table, cyclic_induction_lattice, parse_ledger, permutation_character_report,
    verify_irreducibles, verify_table, CharacterLattice, LatticeError,
};
use ctk_core::{BigInt, Cyclotomic};

use crate::Inputs;

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn blocks<'a>(inputs: &'a Inputs, kind: &'a str) -> Result<Vec<&'a ctk_core::tables::RawBlock>> {
    let found: Vec<_> = inputs
        .doc
        .blocks
        .iter()
        .filter(|b| b.kind == kind)
        .collect();
    if found.is_empty() {
        bail!("no {kind} stanza in the input file");
    }
    Ok(found)
}

pub fn validate(inputs: &Inputs) -> Result<Report> {
    if inputs.doc.tables.is_empty() {
        bail!("no TABLE in the input file");
    }
    let mut report = Report::new();
    for b in &inputs.doc.tables {
        report.extend(verify_table(&b.head, &b.irreducibles()));
        for f in &b.fusions {
            let at = format!("{}->{}", f.from_head, f.to_head);
            match inputs.lib.head(&f.to_head) {
                Ok(big) => match f.validate(&b.head, big) {
                    Ok(()) => report.pass("fusion", &at, ""),
                    Err(e) => report.fail("fusion", &at, e.to_string()),
                },
                Err(_) => report.info("fusion", &at, "target table not loaded"),
            }
        }
    }
    Ok(report)
}

pub fn decompose(inputs: &Inputs) -> Result<Report> {
    let mut report = Report::new();
    for block in blocks(inputs, "DECOMP")? {
        let spec = parse_decomp(block)?;
        let name = &spec.problem.name;
        let solutions = solve_decomposition(&spec.problem)?;
        for s in &solutions {
            report.info("solution", name, join(s));
        }
        match &spec.expect {
            Some(want) if *want == solutions => report.pass(
                "decompose",
                name,
                format!("{} solution(s) as expected", solutions.len()),
            ),
            Some(want) => report.fail(
                "decompose",
                name,
                format!(
                    "expected {} solution(s) [{}], found {}",
                    want.len(),
                    want.iter().map(|m| join(m)).collect::<Vec<_>>().join(" "),
                    solutions.len()
                ),
            ),
            None => report.info(
                "decompose",
                name,
                format!("{} solution(s)", solutions.len()),
            ),
        }
    }
    Ok(report)
}

fn fusion_report(
    inputs: &Inputs,
    sub_id: &str,
    big_id: &str,
    seed: Option<PartialClassMap>,
) -> Result<Report> {
    let (sub, big) = (inputs.lib.head(sub_id)?, inputs.lib.head(big_id)?);
    let at = format!("{sub_id}->{big_id}");
    let entries = seed.unwrap_or_else(|| PartialClassMap::unknown(sub.class_count()));
    let seed = FusionMap {
        from_head: sub.id.clone(),
        to_head: big.id.clone(),
        entries,
    };
    let mut report = Report::new();
    let fusions = match possible_fusions(sub, big, &seed) {
        Ok(f) => f,
        Err(SolverError::InconsistentSeed(m)) => {
            report.fail("fusions", &at, format!("inconsistent seed: {m}"));
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    for f in &fusions {
        report.info("fusion", &at, f.entries.to_string());
    }
    if fusions.is_empty() {
        report.fail("fusions", &at, "no admissible fusion");
        return Ok(report);
    }
    report.pass("fusions", &at, format!("{} candidate(s)", fusions.len()));
    if let Ok(big_bundle) = inputs.lib.bundle(big_id) {
        let chars: Vec<ClassFunction> = big_bundle
            .irreducibles()
            .into_iter()
            .map(|c| c.function)
            .collect();
        let groups = group_by_restriction(&fusions, &chars);
        report.info(
            "restriction-classes",
            &at,
            format!("{} group(s) with distinct restrictions", groups.len()),
        );
    }
    if let Ok(bundled) = inputs.lib.fusion(sub_id, big_id) {
        if fusions.iter().any(|f| f.entries == bundled.entries) {
            report.pass("bundled-fusion", &at, "among the candidates");
        } else {
            report.fail("bundled-fusion", &at, "excluded by the search");
        }
    }
    Ok(report)
}

pub fn fuse(inputs: &Inputs, args: &[String]) -> Result<Report> {
    match args {
        [_file] => {
            let mut report = Report::new();
            for block in blocks(inputs, "FUSIONPROBLEM")? {
                let spec = parse_fusion_problem(block)?;
                report.extend(fusion_report(inputs, &spec.sub, &spec.big, spec.seed)?);
            }
            Ok(report)
        }
        [sub, big] => fusion_report(inputs, sub, big, None),
        [sub, big, seed] => {
            let tokens: Vec<String> = seed.split_whitespace().map(str::to_string).collect();
            let entries = parse_entries(0, &tokens).map_err(|e| anyhow!("seed: {e}"))?;
            fusion_report(inputs, sub, big, Some(entries))
        }
        _ => bail!("fuse expects <file> or <sub> <big> [seed]"),
    }
}

fn refine_report(
    inputs: &Inputs,
    truth: &TableHead,
    start: &TableHead,
    fields: &[ctk_core::solvers::QuadraticField],
) -> Report {
    let mut report = Report::new();
    let id = &truth.id;
    let subs: Vec<(&TableHead, &FusionMap)> = inputs
        .lib
        .fusions()
        .filter(|f| f.to_head == *id)
        .filter_map(|f| inputs.lib.head(&f.from_head).ok().map(|h| (h, f)))
        .collect();
    let used: Vec<&str> = subs.iter().map(|(h, _)| h.id.as_str()).collect();
    report.info(
        "powermap-inputs",
        id,
        format!(
            "fields {}, subgroups {}",
            fields.len(),
            if used.is_empty() {
                "none".into()
            } else {
                used.join(",")
            }
        ),
    );
    match refine_power_maps_with(start, fields, &subs) {
        Ok((refined, amb)) => {
            for a in &amb.ambiguities {
                let names: Vec<&str> = a
                    .candidates
                    .iter()
                    .map(|&c| truth.classes[c].name.as_str())
                    .collect();
                report.info(
                    "ambiguous",
                    &format!("{}^{}", truth.classes[a.class].name, a.prime),
                    format!("{{{}}}", names.join(",")),
                );
            }
            if contains_truth(truth, &refined) {
                report.pass("powermaps-sound", id, "the bundled maps remain admissible");
            } else {
                report.fail("powermaps-sound", id, "refinement excludes a bundled entry");
            }
            if amb.ambiguities.is_empty() {
                report.pass("powermaps-determined", id, "every map resolved");
            } else {
                report.warn(
                    "powermaps-determined",
                    id,
                    format!("{} entries ambiguous", amb.ambiguities.len()),
                );
            }
        }
        Err(e) => report.fail("powermaps", id, e.to_string()),
    }
    report
}

pub fn powermaps(inputs: &Inputs, target: &str) -> Result<Report> {
    let mut report = Report::new();
    if !target.ends_with(".ctb") {
        let head = inputs.lib.head(target)?;
        report.extend(refine_report(inputs, head, head, &[]));
        return Ok(report);
    }
    let problems: Vec<_> = inputs
        .doc
        .blocks
        .iter()
        .filter(|b| b.kind == "POWERPROBLEM")
        .collect();
    if problems.is_empty() {
        if inputs.doc.tables.is_empty() {
            bail!("no POWERPROBLEM or TABLE in the input file");
        }
        for b in &inputs.doc.tables {
            report.extend(refine_report(inputs, &b.head, &b.head, &[]));
        }
        return Ok(report);
    }
    for block in problems {
        let spec = parse_power_problem(block)?;
        let head = inputs.lib.head(&spec.table)?;
        let mut start = head.clone();
        for (p, classes) in spec.blank_indices(head).map_err(|e| anyhow!(e))? {
            if head.power_map(p).is_none() {
                bail!("{} has no {p}-th power map", head.id);
            }
            start = ctk_core::solvers::blank_entries(&start, p, &classes);
        }
        let fields = spec.quadratic_fields(head).map_err(|e| anyhow!(e))?;
        report.extend(refine_report(inputs, head, &start, &fields));
        if inputs.lib.fusions().any(|f| f.to_head == head.id) {
            let alone =
                refine_power_maps_with(&start, &fields, &[]).map(|(_, a)| a.ambiguities.len());
            if let Ok(n) = alone {
                report.info(
                    "without-subgroups",
                    &head.id,
                    format!("{n} entries ambiguous"),
                );
            }
        }
    }
    Ok(report)
}

pub fn permchar(inputs: &Inputs) -> Result<Report> {
    let mut report = Report::new();
    for block in blocks(inputs, "SUBORBITS")? {
        let spec = parse_suborbits(block)?;
        report.extend(check_suborbit_table(&spec, &inputs.lib));
        report.extend(permutation_character_report(&spec, &inputs.lib).0);
    }
    Ok(report)
}

pub fn complete(inputs: &Inputs, source_ids: &[String], orthogonal: bool) -> Result<Report> {
    let mut report = Report::new();
    for block in blocks(inputs, "PARTIAL")? {
        let start = parse_partial(block, &inputs.lib)?;
        let head = inputs.lib.head(&start.head_id)?;
        let mut owned = Vec::new();
        for id in source_ids {
            let bundle = inputs.lib.bundle(id)?;
            owned.push((
                bundle,
                inputs.lib.fusion(id, &head.id)?,
                bundle.irreducibles(),
            ));
        }
        let sources: Vec<ConstituentSource> = owned
            .iter()
            .map(|(b, f, irr)| ConstituentSource {
                head: &b.head,
                fusion: f,
                irreducibles: irr,
            })
            .collect();
        let name = &start.name;
        report.info(
            "unknown",
            name,
            join(
                &start
                    .unknown_classes()
                    .iter()
                    .map(|&c| &head.classes[c].name)
                    .collect::<Vec<_>>(),
            ),
        );
        let r = complete_character(&start, head, &sources, orthogonal)?;
        for (id, m) in source_ids.iter().zip(&r.decompositions) {
            report.info("constituents", &format!("{name},{id}"), join(m));
        }
        for e in &r.events {
            let at = match e.class {
                Some(c) => format!("{name}@{}", head.classes[c].name),
                None => name.clone(),
            };
            let rule = e.rule.to_string();
            match &e.kind {
                EventKind::Filled(v) => report.info("filled", &at, format!("{v} by {rule}")),
                EventKind::Narrowed(c) => {
                    report.info("narrowed", &at, format!("{{{}}} by {rule}", join(c)))
                }
                EventKind::Suspicious(v) => report.warn(
                    "suspicious",
                    &at,
                    format!("{v} by {rule} violates the centralizer bound"),
                ),
                EventKind::Skipped(why) => report.info("skipped", &at, format!("{rule}: {why}")),
            }
        }
        let left = r.character.unknown_classes();
        if !left.is_empty() {
            let names: Vec<&str> = left
                .iter()
                .map(|&c| head.classes[c].name.as_str())
                .collect();
            report.warn(
                "complete",
                name,
                format!(
                    "{} class(es) remain unknown: {}",
                    left.len(),
                    names.join(",")
                ),
            );
            continue;
        }
        report.pass("complete", name, format!("{} classes", head.class_count()));
        let (nn, nt) = norms(&r.character, head)?.expect("complete character");
        if nn == Cyclotomic::one() {
            report.pass("norm", name, "<chi,chi> = 1");
        } else {
            report.fail("norm", name, format!("<chi,chi> = {nn}"));
        }
        if !orthogonal {
            report.info("trivial-product", name, format!("<chi,1> = {nt}"));
        } else if nt.is_zero() {
            report.pass("trivial-product", name, "<chi,1> = 0");
        } else {
            report.fail("trivial-product", name, format!("<chi,1> = {nt}"));
        }
        let counts = [
            Rule::DefectZero,
            Rule::Congruence,
            Rule::Constituent,
            Rule::Orthogonality,
        ]
        .map(|rule| {
            (
                rule,
                r.attribution().values().filter(|&&x| x == rule).count(),
            )
        });
        let text: Vec<String> = counts
            .iter()
            .map(|(rule, n)| format!("{rule}={n}"))
            .collect();
        report.info("attribution", name, text.join(" "));
    }
    Ok(report)
}

pub fn sylow(inputs: &Inputs) -> Result<Report> {
    let mut report = Report::new();
    for block in blocks(inputs, "SYLOW")? {
        let problem = parse_sylow(block, |id| inputs.lib.group_order(id).ok())?;
        let name = &problem.name;
        let r = sylow_feasible(&problem)?;
        report.info(
            "pre-congruence",
            name,
            format!(
                "{} order(s): {}",
                r.pre_congruence.len(),
                join(&r.pre_congruence)
            ),
        );
        report.info(
            "post-congruence",
            name,
            format!("{} order(s): {}", r.feasible.len(), join(&r.feasible)),
        );
        if let Some(claimed) = problem.claimed_pre_congruence {
            if claimed == r.pre_congruence.len() {
                report.pass("claimed-count", name, format!("{claimed} as stated"));
            } else {
                report.warn(
                    "claimed-count",
                    name,
                    format!(
                        "stated {claimed} pre-congruence order(s), the constraints admit {}",
                        r.pre_congruence.len()
                    ),
                );
            }
        }
        match r.feasible.len() {
            1 => report.pass(
                "sylow",
                name,
                format!("unique normalizer order {}", r.feasible[0]),
            ),
            0 => report.fail("sylow", name, "no order survives"),
            n => report.warn("sylow", name, format!("{n} orders survive")),
        }
    }
    Ok(report)
}

pub fn verify(inputs: &Inputs) -> Result<Report> {
    let mut report = Report::new();
    let mut any = false;
    for b in &inputs.doc.tables {
        any = true;
        let irr = b.irreducibles();
        report.extend(verify_table(&b.head, &irr));
        if !irr.is_empty() && irr.len() == b.head.class_count() {
            // norms are already in the table report; add lattice membership only
            let lattice = cyclic_induction_lattice(&b.head)?;
            let mut lines = verify_irreducibles(&b.head, &lattice, &irr);
            lines.lines.retain(|l| l.check == "lattice-membership");
            report.extend(lines);
        }
    }
    for block in inputs.doc.blocks.iter().filter(|b| b.kind == "LEDGER") {
        any = true;
        let ledger = parse_ledger(block)?;
        report.extend(ledger.check(inputs.lib.head(&ledger.group).ok()));
    }
    for block in inputs.doc.blocks.iter().filter(|b| b.kind == "SUBORBITS") {
        any = true;
        report.extend(check_suborbit_table(&parse_suborbits(block)?, &inputs.lib));
    }
    if !any {
        bail!("nothing to verify: no TABLE, LEDGER or SUBORBITS in the input file");
    }
    Ok(report)
}

fn target_function(
    head: &TableHead,
    characters: &[Character],
    target: &str,
) -> Result<(String, ClassFunction)> {
    if let Some(c) = characters.iter().find(|c| c.name == target) {
        return Ok((c.name.clone(), c.function.clone()));
    }
    let values: Vec<Cyclotomic> = target
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|v| parse_value(0, v.trim()).map_err(|e| anyhow!("{e}")))
        .collect::<Result<_>>()
        .with_context(|| {
            format!(
                "{target} is neither a character of {} nor a value list",
                head.id
            )
        })?;
    if values.len() != head.class_count() {
        bail!(
            "{} values given, {} has {} classes",
            values.len(),
            head.id,
            head.class_count()
        );
    }
    Ok((
        target.to_string(),
        ClassFunction::new(head.id.clone(), values),
    ))
}

pub fn lattice(inputs: &Inputs, table: &str, target: &str) -> Result<Report> {
    let bundle = if table.ends_with(".ctb") {
        inputs
            .doc
            .tables
            .first()
            .ok_or_else(|| anyhow!("no TABLE in {table}"))?
    } else {
        inputs.lib.bundle(table)?
    };
    let head = &bundle.head;
    let (name, f) = target_function(head, &bundle.characters, target)?;
    let mut gens = cyclic_induction_lattice(head)?.generators;
    let mut subs = BTreeSet::new();
    for fus in inputs.lib.fusions().filter(|f| f.to_head == head.id) {
        let Ok(sub) = inputs.lib.bundle(&fus.from_head) else {
            continue;
        };
        for psi in sub.irreducibles() {
            gens.push(induce(&psi.function, &sub.head, head, fus)?);
        }
        subs.insert(sub.head.id.clone());
    }
    let lattice = CharacterLattice::new(&head.id, gens)?;
    let mut report = Report::new();
    let from: Vec<&String> = subs.iter().collect();
    report.info(
        "lattice",
        &head.id,
        format!(
            "rank {} from {} generators (cyclic subgroups{})",
            lattice.rank(),
            lattice.generators.len(),
            if from.is_empty() {
                String::new()
            } else {
                format!(", {}", join(&from))
            }
        ),
    );
    match lattice.membership(&f, &name) {
        Ok(c) => {
            report.info("basis-coordinates", &name, join(&c.basis));
            let support: Vec<String> = c
                .generators
                .iter()
                .enumerate()
                .filter(|(_, k)| **k != BigInt::from(0))
                .map(|(i, k)| format!("{k}*g{i}"))
                .collect();
            report.info("generator-coordinates", &name, support.join(" "));
            report.pass(
                "lattice-membership",
                &name,
                format!("in the lattice of {}", head.id),
            );
        }
        Err(e @ LatticeError::NotInLattice(_)) => {
            report.fail("lattice-membership", &name, e.to_string())
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}
