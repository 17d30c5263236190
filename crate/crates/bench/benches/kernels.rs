use std::path::PathBuf;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ctk_core::charfun::scalar_product;
use ctk_core::completion::{complete_character, parse_partial};
use ctk_core::solvers::{parse_decomp, possible_fusions, refine_power_maps, solve_decomposition};
use ctk_core::tables::{FusionMap, PartialClassMap, TableLibrary};
use ctk_core::verify::check_orthogonality;
use ctk_core::Cyclotomic;

fn library() -> TableLibrary {
    let mut lib = TableLibrary::new();
    lib.load_dir(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
        .unwrap();
    lib
}

fn arithmetic(c: &mut Criterion) {
    let x: Cyclotomic = "E(35)+3*E(35)^4-E(7)^2/2".parse().unwrap();
    let y: Cyclotomic = "E(15)^7-2*E(5)+E(3)".parse().unwrap();
    c.bench_function("cyclotomic product, conductor 105", |b| {
        b.iter(|| black_box(&x) * black_box(&y))
    });
}

fn tables(c: &mut Criterion) {
    let lib = library();
    let m = lib.bundle("M").unwrap();
    let chi = m.character("196883a").unwrap().function.clone();
    c.bench_function("scalar product on M", |b| {
        b.iter(|| scalar_product(&m.head, black_box(&chi), &chi))
    });
    let s5 = lib.bundle("S5").unwrap();
    let irr = s5.irreducibles();
    c.bench_function("orthogonality of S5", |b| {
        b.iter(|| check_orthogonality(&s5.head, black_box(&irr)))
    });
    c.bench_function("power-map refinement of S5", |b| {
        b.iter(|| refine_power_maps(black_box(&s5.head)))
    });
}

fn solvers(c: &mut Criterion) {
    let lib = library();
    let lemma1 = parse_decomp(lib.blocks("DECOMP").find(|b| b.name == "lemma1").unwrap()).unwrap();
    c.bench_function("2.B restriction decomposition", |b| {
        b.iter(|| solve_decomposition(black_box(&lemma1.problem)))
    });
    let (s4, s5) = (lib.head("S4").unwrap(), lib.head("S5").unwrap());
    let seed = FusionMap {
        from_head: "S4".into(),
        to_head: "S5".into(),
        entries: PartialClassMap::unknown(s4.class_count()),
    };
    c.bench_function("fusions S4 into S5", |b| {
        b.iter(|| possible_fusions(s4, s5, black_box(&seed)))
    });
    let m = lib.head("M").unwrap();
    let start = parse_partial(
        lib.blocks("PARTIAL")
            .find(|b| b.name == "M endgame")
            .unwrap(),
        &lib,
    )
    .unwrap();
    c.bench_function("Monster endgame completion", |b| {
        b.iter(|| complete_character(black_box(&start), m, &[], true))
    });
}

criterion_group!(benches, arithmetic, tables, solvers);
criterion_main!(benches);
