//! One PASS/FAIL line per acceptance criterion, with the time it took.

#[path = "../../core/tests/common/oracles.rs"]
mod oracles;

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ctk_core::charfun::{derive_centralizers, induce, parse_suborbits, restrict, scalar_product};
use ctk_core::completion::{complete_character, norms, parse_partial, PartialCharacter, Rule};
use ctk_core::solvers::{possible_fusions, solve_decomposition};
use ctk_core::tables::{ClassFunction, FusionMap, PartialClassMap, TableLibrary};
use ctk_core::verify::{
    check_orthogonality, check_suborbit_table, class_equation_report, cyclic_induction_lattice,
    parse_ledger, permutation_character_report,
};
use ctk_core::{BigInt, Cyclotomic};
use proptest::test_runner::{Config, RngSeed, TestRunner};

const SMALL: [&str; 13] = [
    "C2", "C3", "C4", "C5", "C6", "C7", "S3", "D8", "Q8", "A4", "S4", "A5", "S5",
];

type Outcome = Result<String, String>;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn library() -> TableLibrary {
    let mut lib = TableLibrary::new();
    lib.load_dir(&fixtures()).expect("bundled fixtures load");
    lib
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ctk(args: &[&str]) -> Result<(i32, String), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_ctk"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stdout).into_owned(),
    ))
}

fn solutions(out: &str, name: &str) -> Vec<String> {
    let prefix = format!("INFO solution {name} ");
    out.lines()
        .filter_map(|l| l.strip_prefix(&prefix))
        .map(str::to_string)
        .collect()
}

fn lemma(file: &str, name: &str, want: &str, constituents: &[&str]) -> Outcome {
    let path = fixtures().join(file).display().to_string();
    let (code, out) = ctk(&["decompose", &path])?;
    let got = solutions(&out, name);
    ensure(
        code == 0 && got == [want],
        format!("exit {code}, solutions {got:?}"),
    )?;
    let lib = library();
    let block = lib
        .blocks("DECOMP")
        .find(|b| b.name == name)
        .ok_or("missing stanza")?;
    let spec = ctk_core::solvers::parse_decomp(block).map_err(|e| e.to_string())?;
    let names: Vec<&str> = spec
        .problem
        .candidates
        .iter()
        .map(|c| c.name.as_str())
        .collect();
    ensure(names == constituents, format!("candidates {names:?}"))?;
    Ok(format!("unique solution {} = {}", want, names.join(" + ")))
}

fn criterion3() -> Outcome {
    let lib = library();
    let m = lib.head("M").map_err(|e| e.to_string())?;
    let chi = lib
        .bundle("M")
        .unwrap()
        .character("196883a")
        .ok_or("no 196883a")?
        .clone();
    let block = lib
        .blocks("PARTIAL")
        .find(|b| b.name == "M endgame")
        .ok_or("missing stanza")?;
    let start = parse_partial(block, &lib).map_err(|e| e.to_string())?;
    let blanked: Vec<&str> = start
        .unknown_classes()
        .iter()
        .map(|&c| m.classes[c].name.as_str())
        .collect();
    let r = complete_character(&start, m, &[], true).map_err(|e| e.to_string())?;
    let value = |n: &str| r.character.values[m.class_index(n).unwrap()].clone();
    ensure(
        value("41A") == Some(Cyclotomic::one()),
        "41A not restored to 1",
    )?;
    for n in ["59A", "59B", "71A", "71B"] {
        ensure(
            value(n) == Some(Cyclotomic::zero()),
            format!("{n} not restored to 0"),
        )?;
    }
    let attr = r.attribution();
    let rule = |n: &str| attr.get(&m.class_index(n).unwrap()).copied();
    ensure(
        rule("41A") == Some(Rule::Congruence),
        "41A not by congruence",
    )?;
    ensure(
        ["59A", "59B", "71A", "71B"]
            .iter()
            .all(|n| rule(n) == Some(Rule::DefectZero)),
        "not by defect zero",
    )?;
    let expected = PartialCharacter {
        name: start.name.clone(),
        ..PartialCharacter::from_character(&chi)
    };
    ensure(
        r.character == expected,
        "completed character differs from the bundled one",
    )?;
    let (nn, nt) = norms(&r.character, m)
        .map_err(|e| e.to_string())?
        .ok_or("incomplete")?;
    ensure(
        nn == Cyclotomic::one() && nt.is_zero(),
        format!("<chi,chi> = {nn}, <chi,1> = {nt}"),
    )?;
    Ok(format!(
        "blanked {}; restored, <chi,chi> = 1, <chi,1> = 0",
        blanked.join(",")
    ))
}

fn criterion4() -> Outcome {
    let lib = library();
    let m = lib.head("M").map_err(|e| e.to_string())?;
    ensure(class_equation_report(m).all_pass(), "class equation fails")?;
    let ledger =
        parse_ledger(lib.blocks("LEDGER").next().ok_or("no ledger")?).map_err(|e| e.to_string())?;
    let report = ledger.check(Some(m));
    ensure(report.all_pass(), report.to_string())?;
    let milestones: Vec<String> = ledger.entries.iter().map(|e| e.total.to_string()).collect();
    Ok(format!(
        "sum of |M|/|C| = |M| over 194 classes; ledger {}",
        milestones.join(" ")
    ))
}

fn criterion5() -> Outcome {
    let lib = library();
    let block = lib
        .blocks("SUBORBITS")
        .find(|b| b.name == "2.B")
        .ok_or("no table")?;
    let spec = parse_suborbits(block).map_err(|e| e.to_string())?;
    ensure(spec.rows.len() == 9, format!("{} rows", spec.rows.len()))?;
    let r = check_suborbit_table(&spec, &lib);
    ensure(r.all_pass(), r.to_string())?;
    let total: BigInt = spec.rows.iter().map(|r| &r.orbit_length).sum();
    Ok(format!(
        "9 lengths = |2.B|/|stabilizer|, sum {total} = |M|/|2.B|"
    ))
}

fn criterion6() -> Outcome {
    let path = fixtures().join("sylow11.ctb").display().to_string();
    let (code, out) = ctk(&["sylow", &path])?;
    ensure(code == 0, format!("exit {code}"))?;
    let line = |prefix: &str| {
        out.lines()
            .find(|l| l.starts_with(prefix))
            .map(str::to_string)
    };
    let post = line("INFO post-congruence M11").ok_or("no survivor list")?;
    ensure(post.ends_with("1 order(s): 72600"), post.clone())?;
    let pre = line("INFO pre-congruence M11").ok_or("no candidate list")?;
    let claimed = line("WARN claimed-count M11")
        .or_else(|| line("PASS claimed-count M11"))
        .ok_or("count not compared")?;
    Ok(format!(
        "{}; survivor 72600; {}",
        pre.trim_start_matches("INFO pre-congruence M11 "),
        claimed
    ))
}

fn small_pairs(lib: &TableLibrary) -> Vec<FusionMap> {
    lib.fusions()
        .filter(|f| SMALL.contains(&f.from_head.as_str()) && SMALL.contains(&f.to_head.as_str()))
        .cloned()
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn criterion7() -> Outcome {
    let lib = library();
    for id in SMALL {
        let b = lib.bundle(id).unwrap();
        let r = check_orthogonality(&b.head, &b.irreducibles());
        ensure(
            r.all_pass() && r.count(ctk_core::report::Status::Pass) == 2,
            format!("{id}: {r}"),
        )?;
    }
    // irreducibles span the class functions, so checking them covers every f by linearity
    let pairs = small_pairs(&lib);
    let mut products = 0;
    for fus in &pairs {
        let (sub, big) = (
            lib.bundle(&fus.from_head).unwrap(),
            lib.bundle(&fus.to_head).unwrap(),
        );
        for psi in sub.irreducibles() {
            let ind =
                induce(&psi.function, &sub.head, &big.head, fus).map_err(|e| e.to_string())?;
            for chi in big.irreducibles() {
                let res = restrict(&chi.function, fus).map_err(|e| e.to_string())?;
                let (l, r) = (
                    scalar_product(&big.head, &ind, &chi.function),
                    scalar_product(&sub.head, &psi.function, &res),
                );
                ensure(
                    l.is_ok() && l == r,
                    format!("reciprocity fails {} -> {}", fus.from_head, fus.to_head),
                )?;
                products += 1;
            }
        }
        // Res(1_H^G) determines |C_G(g)| on every class H meets
        let perm = restrict(
            &induce(&sub.head.trivial_character(), &sub.head, &big.head, fus).unwrap(),
            fus,
        )
        .unwrap();
        let derived =
            derive_centralizers(&perm, &sub.head, &big.head, fus).map_err(|e| e.to_string())?;
        for (g, c) in derived {
            ensure(
                &c == big.head.centralizer(g),
                format!(
                    "{} -> {}: centralizer of {}",
                    fus.from_head, fus.to_head, big.head.classes[g].name
                ),
            )?;
        }
    }
    let spec = parse_suborbits(
        lib.blocks("SUBORBITS")
            .find(|b| b.name == "S3")
            .ok_or("no S4 suborbits")?,
    )
    .unwrap();
    let (r, perm) = permutation_character_report(&spec, &lib);
    ensure(
        perm == Some(ClassFunction::from_integers("S3", &[4, 2, 1])),
        format!("permutation character {perm:?}"),
    )?;
    let s4 = permutations(4);
    let reps = [vec![0, 1, 2, 3], vec![1, 0, 2, 3], vec![1, 2, 0, 3]];
    let brute: Vec<String> = reps
        .iter()
        .map(|g| {
            s4.iter()
                .filter(|h| h.iter().map(|&x| g[x]).eq(g.iter().map(|&x| h[x])))
                .count()
                .to_string()
        })
        .collect();
    let derived: Vec<String> = r
        .lines
        .iter()
        .filter(|l| l.check == "centralizer")
        .map(|l| l.details.clone())
        .collect();
    ensure(
        r.all_pass() && derived == brute,
        format!("derived {derived:?}, brute force {brute:?}"),
    )?;
    for id in SMALL {
        let b = lib.bundle(id).unwrap();
        let lattice = cyclic_induction_lattice(&b.head).map_err(|e| e.to_string())?;
        for chi in b.irreducibles() {
            ensure(
                lattice.membership(&chi.function, &chi.name).is_ok(),
                format!("{id} {} outside the lattice", chi.name),
            )?;
        }
    }
    Ok(format!(
        "orthogonality on 13 tables; {products} reciprocity products over {} pairs; S4/S3 = (4,2,1), |C| = {}; lattices contain all irreducibles",
        pairs.len(),
        brute.join(",")
    ))
}

fn criterion8() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 100,
        rng_seed: RngSeed::Fixed(0xacce),
        failure_persistence: None,
        ..Config::default()
    });
    let cases = std::cell::Cell::new(0usize);
    let run = runner.run(&oracles::decomposition_problem(), |p| {
        cases.set(cases.get() + 1);
        let got = solve_decomposition(&p)
            .map_err(|e| proptest::test_runner::TestCaseError::fail(e.to_string()))?;
        proptest::prop_assert_eq!(got, oracles::naive_decompose(&p));
        Ok(())
    });
    run.map_err(|e| format!("decomposition oracle: {e}"))?;
    let lib = library();
    let mut pairs = 0;
    for a in SMALL {
        for b in SMALL {
            let (sub, big) = (lib.head(a).unwrap(), lib.head(b).unwrap());
            if a == b
                || sub.group_order >= big.group_order
                || (&big.group_order % &sub.group_order) != BigInt::from(0)
            {
                continue;
            }
            let seed = FusionMap {
                from_head: a.into(),
                to_head: b.into(),
                entries: PartialClassMap::unknown(sub.class_count()),
            };
            let got: Vec<Vec<usize>> = possible_fusions(sub, big, &seed)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|f| f.resolved().unwrap())
                .collect();
            ensure(
                got == oracles::brute_fusions(sub, big),
                format!("{a} -> {b}"),
            )?;
            pairs += 1;
        }
    }
    Ok(format!("{} random decompositions agree with naive enumeration; fusions agree with brute force on {pairs} pairs", cases.get()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("restriction of 196883a to 2.B", Duration::from_secs(1), || {
            lemma(
                "lemma1.ctb",
                "lemma1",
                "1,1,1,1",
                &["1a", "4371a", "96255a", "96256a"],
            )
        }),
        ("restriction of 196883a to 3.F3+", Duration::from_secs(1), || {
            lemma(
                "lemma2.ctb",
                "lemma2",
                "1,1,1,1,1,1,1",
                &["1a", "8671a", "57477a", "783a", "783b", "64584a", "64584b"],
            )
        }),
        (
            "value-completion endgame",
            Duration::from_secs(5),
            criterion3,
        ),
        (
            "class equation and ledger",
            Duration::from_secs(1),
            criterion4,
        ),
        (
            "suborbit table consistency",
            Duration::from_secs(1),
            criterion5,
        ),
        ("Sylow-11 filter", Duration::from_secs(1), criterion6),
        (
            "small-group property suite",
            Duration::from_secs(30),
            criterion7,
        ),
        ("oracle equivalence", Duration::from_secs(60), criterion8),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {budget:?} budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} criterion {} {name} ({:.3}s, budget {}s): {detail}",
            i + 1,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
