use std::collections::BTreeSet;
use std::path::PathBuf;

use ctk_core::completion::*;
use ctk_core::tables::{Character, TableLibrary};
use ctk_core::{BigInt, Cyclotomic};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn library() -> TableLibrary {
    let mut lib = TableLibrary::new();
    lib.load_dir(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
        .unwrap();
    lib
}

fn monster_chi(lib: &TableLibrary) -> Character {
    lib.bundle("M")
        .unwrap()
        .character("196883a")
        .unwrap()
        .clone()
}

#[test]
fn endgame_restores_defect_zero_and_41a() {
    let lib = library();
    let m = lib.head("M").unwrap();
    let block = lib
        .blocks("PARTIAL")
        .find(|b| b.name == "M endgame")
        .unwrap();
    let start = parse_partial(block, &lib).unwrap();
    assert_eq!(start.unknown_classes().len(), 6);
    let r = complete_character(&start, m, &[], true).unwrap();
    let class = |n: &str| m.class_index(n).unwrap();
    assert_eq!(r.character.values[class("41A")], Some(Cyclotomic::from(1)));
    for n in ["59A", "59B", "71A", "71B"] {
        assert_eq!(
            r.character.values[class(n)],
            Some(Cyclotomic::zero()),
            "{n}"
        );
    }
    let attr = r.attribution();
    assert_eq!(attr[&class("41A")], Rule::Congruence);
    assert_eq!(attr[&class("59A")], Rule::DefectZero);
    assert_eq!(attr[&class("13B")], Rule::Orthogonality);
    let chi = monster_chi(&lib);
    assert_eq!(
        r.character,
        PartialCharacter {
            name: "endgame".into(),
            ..PartialCharacter::from_character(&chi)
        }
    );
    let (n, t) = norms(&r.character, m).unwrap().unwrap();
    assert_eq!(n, Cyclotomic::one());
    assert_eq!(t, Cyclotomic::zero());
}

#[test]
fn monster_41a_congruence() {
    let lib = library();
    let m = lib.head("M").unwrap();
    let c = m.class_index("41A").unwrap();
    let (out, _) =
        congruence_fill(&PartialCharacter::blanked(&monster_chi(&lib), &[c]), m).unwrap();
    assert_eq!(out.values[c], Some(Cyclotomic::from(1)));
}

#[test]
fn a5_degree_five_vanishes_on_order_five() {
    let lib = library();
    let b = lib.bundle("A5").unwrap();
    let chi = b
        .irreducibles()
        .into_iter()
        .find(|c| c.degree() == BigInt::from(5))
        .unwrap();
    let fives: Vec<usize> = (0..b.head.class_count())
        .filter(|&c| b.head.order(c) == 5)
        .collect();
    let (out, ev) = defect_zero_fill(&PartialCharacter::blanked(&chi, &fives), &b.head, 5).unwrap();
    assert_eq!(ev.len(), 2);
    assert_eq!(out, PartialCharacter::from_character(&chi));
}

#[test]
fn subgroup_constituents_fill_sound_values_in_the_monster() {
    let lib = library();
    let m = lib.head("M").unwrap();
    let chi = monster_chi(&lib);
    let mut fused = BTreeSet::new();
    for id in ["2.B", "3.F3+"] {
        fused.extend(
            lib.fusion(id, "M")
                .unwrap()
                .entries
                .entries()
                .iter()
                .filter_map(|e| e.resolved()),
        );
    }
    let outside: Vec<usize> = (0..m.class_count())
        .filter(|c| !fused.contains(c))
        .collect();
    let (b2, b3) = (lib.bundle("2.B").unwrap(), lib.bundle("3.F3+").unwrap());
    let (i2, i3) = (b2.irreducibles(), b3.irreducibles());
    let sources = [
        ConstituentSource {
            head: &b2.head,
            fusion: lib.fusion("2.B", "M").unwrap(),
            irreducibles: &i2,
        },
        ConstituentSource {
            head: &b3.head,
            fusion: lib.fusion("3.F3+", "M").unwrap(),
            irreducibles: &i3,
        },
    ];
    let r = complete_character(
        &PartialCharacter::blanked(&chi, &outside),
        m,
        &sources,
        true,
    )
    .unwrap();
    let one = |k: usize| vec![BigInt::from(1); k];
    assert_eq!(r.decompositions, vec![one(4), one(7)]);
    for (c, v) in r.character.values.iter().enumerate() {
        if let Some(v) = v {
            assert_eq!(v, &chi.values()[c], "{}", m.classes[c].name);
        }
    }
    // the remaining classes need centralizer tables that are not bundled
    assert_eq!(outside.len(), 39);
    assert_eq!(r.character.unknown_classes().len(), 24);
}

#[test]
fn lemma1_decomposition_restores_fused_values() {
    let lib = library();
    let m = lib.head("M").unwrap();
    let chi = monster_chi(&lib);
    let b2 = lib.bundle("2.B").unwrap();
    let fus = lib.fusion("2.B", "M").unwrap();
    let restricted = restrict_partial(&PartialCharacter::from_character(&chi), &b2.head, fus);
    let sol = constituent_fill(&restricted, &b2.head, &b2.irreducibles()).unwrap();
    assert_eq!(sol.rank, 4);
    let blank: Vec<usize> = (1..m.class_count()).collect();
    let (lifted, _) = lift(
        &PartialCharacter::blanked(&chi, &blank),
        m,
        &sol.restriction,
        fus,
    )
    .unwrap();
    for (c, v) in lifted.values.iter().enumerate() {
        if let Some(v) = v {
            assert_eq!(v, &chi.values()[c]);
        }
    }
}

const SMALL: [&str; 13] = [
    "C2", "C3", "C4", "C5", "C6", "C7", "S3", "D8", "Q8", "A4", "S4", "A5", "S5",
];

fn seeded(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0xc0de),
        ..Config::default()
    }
}

proptest! {
    #![proptest_config(seeded(128))]
    #[test]
    fn each_rule_restores_or_abstains(
        t in 0usize..SMALL.len(),
        k in 0usize..8,
        mask in prop::collection::vec(any::<bool>(), 1..8),
    ) {
        let lib = library();
        let b = lib.bundle(SMALL[t]).unwrap();
        let irr = b.irreducibles();
        let chi = &irr[k % irr.len()];
        let blank: Vec<usize> = (1..b.head.class_count()).filter(|&c| mask[c % mask.len()]).collect();
        let start = PartialCharacter::blanked(chi, &blank);
        let truth = PartialCharacter::from_character(chi);
        let agrees = |p: &PartialCharacter| {
            p.values.iter().zip(&truth.values).all(|(a, b)| a.is_none() || a == b)
        };
        let (c, _) = congruence_fill(&start, &b.head).unwrap();
        prop_assert!(agrees(&c));
        for p in [2u64, 3, 5, 7] {
            let (d, _) = defect_zero_fill(&start, &b.head, p).unwrap();
            prop_assert!(agrees(&d));
            // the two rules commute where both apply
            let (cd, _) = defect_zero_fill(&c, &b.head, p).unwrap();
            let (dc, _) = congruence_fill(&d, &b.head).unwrap();
            prop_assert_eq!(&cd.values, &dc.values);
        }
        let nontrivial = k % irr.len() != 0;
        if nontrivial && start.unknown_classes().len() == 1 {
            let (o, _) = orthogonality_fill(&start, &b.head).unwrap();
            prop_assert_eq!(&o.values, &truth.values);
        }
        let r = complete_character(&start, &b.head, &[], nontrivial).unwrap();
        prop_assert!(agrees(&r.character));
    }
}

#[test]
fn full_rank_constituents_have_nonnegative_scalar_products() {
    let lib = library();
    for (sub, big) in [
        ("S3", "S4"),
        ("A4", "S4"),
        ("D8", "S4"),
        ("A5", "S5"),
        ("S4", "S5"),
    ] {
        let (bs, bb) = (lib.bundle(sub).unwrap(), lib.bundle(big).unwrap());
        let fus = lib.fusion(sub, big).unwrap();
        for chi in bb.irreducibles() {
            let res = restrict_partial(&PartialCharacter::from_character(&chi), &bs.head, fus);
            let sol = constituent_fill(&res, &bs.head, &bs.irreducibles()).unwrap();
            for (psi, m) in bs.irreducibles().iter().zip(&sol.multiplicities) {
                let f = sol.restriction.clone();
                let sp = ctk_core::charfun::scalar_product(&bs.head, &f, &psi.function).unwrap();
                assert_eq!(sp, Cyclotomic::from(m.clone()));
            }
        }
    }
}
