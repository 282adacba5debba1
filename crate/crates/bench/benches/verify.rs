use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eicat_core::cartan::samples;
use eicat_core::ei_category::{build_ei_quiver, enumerate_category};
use eicat_core::ffield::{make_field, DEFAULT_SEED};
use eicat_core::gls::build_h;
use eicat_core::transform::{bimodule_decomposition, build_main_isomorphism, regenerate_tables};

fn field(c: &mut Criterion) {
    c.bench_function("make_field F_2 with 15th roots", |b| {
        b.iter(|| make_field(black_box(2), black_box(15), DEFAULT_SEED).unwrap())
    });
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("bimodule_decomposition");
    for (p, a, b, roots) in [(2u64, 6usize, 4usize, 3u64), (3, 6, 9, 2), (2, 8, 8, 1)] {
        let f = make_field(p, roots, DEFAULT_SEED).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("p{p}_{a}x{b}")),
            &(a, b),
            |bch, &(a, b)| bch.iter(|| bimodule_decomposition(&f, a, b).unwrap()),
        );
    }
    group.finish();
}

fn algebras(c: &mut Criterion) {
    let t = samples::b3();
    c.bench_function("enumerate_category B3", |b| {
        b.iter(|| enumerate_category(&build_ei_quiver(black_box(&t))))
    });
    let f = Arc::new(make_field(3, 1, DEFAULT_SEED).unwrap());
    c.bench_function("build_h B3", |b| {
        b.iter(|| build_h(black_box(&t), f.clone()))
    });
}

fn main_isomorphism(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_main_isomorphism");
    group.sample_size(20);
    for (name, t, p) in [
        ("G2", samples::g2(), 2u64),
        ("B3", samples::b3(), 3),
        ("~A11", samples::a11_tilde(), 2),
    ] {
        group.bench_function(format!("{name} p={p}"), |b| {
            b.iter(|| build_main_isomorphism(black_box(&t), p, DEFAULT_SEED).unwrap())
        });
    }
    group.finish();
}

fn tables(c: &mut Criterion) {
    c.bench_function("regenerate_tables", |b| {
        b.iter(|| regenerate_tables().unwrap())
    });
}

criterion_group!(
    benches,
    field,
    decomposition,
    algebras,
    main_isomorphism,
    tables
);
criterion_main!(benches);
