//! Benchmarks for the hot paths: exact elimination, Verma construction
//! (the PBW rewriting engine plus bracket validation), linkage search, and
//! the lift-system solve behind the non-projectivity witness.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use std::sync::Arc;

use oprime_bench::{dense_matrix, gl2_like, sl3};
use oprime_core::algebra::GFunctional;
use oprime_core::category;
use oprime_core::linalg;
use oprime_core::pbw;
use oprime_core::roots::{build_root_system, cartan_by_name, LinkageOutcome, Weight};

fn bench_linalg(c: &mut Criterion) {
    let m = dense_matrix(12, 16);
    c.bench_function("kernel 12x16 rational", |b| {
        b.iter(|| linalg::kernel(black_box(&m)))
    });
    let square = dense_matrix(14, 14);
    c.bench_function("rank 14x14 rational", |b| {
        b.iter(|| linalg::rank(black_box(&square)))
    });
    let rhs: Vec<_> = (0..12)
        .map(|i| oprime_core::linalg::rat(i as i64 % 5))
        .collect();
    c.bench_function("solve 12x16 with witness tracking", |b| {
        b.iter(|| linalg::solve(black_box(&m), black_box(&rhs)).unwrap())
    });
}

fn bench_modules(c: &mut Criterion) {
    let (alg, g) = gl2_like();
    c.bench_function("build M(2,g) rank one depth 12", |b| {
        b.iter(|| pbw::build_verma(black_box(&alg), &Weight::from_ints(&[2]), &g, 12).unwrap())
    });
    let alg3 = sl3();
    c.bench_function("build M((0,0)) sl3 depth 6", |b| {
        b.iter(|| {
            pbw::build_verma(
                black_box(&alg3),
                &Weight::from_ints(&[0, 0]),
                &GFunctional::zero(),
                6,
            )
            .unwrap()
        })
    });
    let m = pbw::build_verma(&alg3, &Weight::from_ints(&[0, 0]), &GFunctional::zero(), 6).unwrap();
    c.bench_function("bracket compatibility sl3 depth 6", |b| {
        b.iter(|| pbw::check_bracket_compatibility(black_box(&m)).unwrap())
    });
}

fn bench_category(c: &mut Criterion) {
    let rs = Arc::new(build_root_system(cartan_by_name("A2").unwrap()).unwrap());
    c.bench_function("strong linkage BFS sl3 orbit", |b| {
        b.iter(|| {
            let out = rs
                .strongly_linked(
                    black_box(&Weight::from_ints(&[-2, -2])),
                    &Weight::from_ints(&[0, 0]),
                )
                .unwrap();
            assert!(matches!(out, LinkageOutcome::Linked(_)));
        })
    });
    let (alg, g) = gl2_like();
    let diagram =
        category::build_nonprojectivity_diagram(&alg, &g, &Weight::from_ints(&[2]), 9).unwrap();
    c.bench_function("non-liftability certificate solve", |b| {
        b.iter(|| {
            category::nonliftability_certificate(black_box(&diagram.p), &diagram.pi, &diagram.phi)
                .unwrap()
        })
    });
    c.bench_function("kostant partition sl3 height 8", |b| {
        b.iter(|| rs.kostant_partition(black_box(&[4, 4])))
    });
}

criterion_group!(benches, bench_linalg, bench_modules, bench_category);
criterion_main!(benches);
