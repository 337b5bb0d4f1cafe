use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lapdiam::{enumerate, iso, Graph};

fn connected_classes(c: &mut Criterion) {
    let mut group = c.benchmark_group("connected_classes");
    group.sample_size(10);
    for n in [5, 6, 7] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate::connected_classes(black_box(n), false).unwrap())
        });
    }
    group.finish();
}

fn canonical_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_form");
    let petersen = Graph::from_edges(
        10,
        (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]),
    )
    .unwrap();
    let cases = [
        ("path12", Graph::path(12).unwrap()),
        ("star12", Graph::star(12).unwrap()),
        ("petersen", petersen),
    ];
    for (name, g) in &cases {
        group.bench_with_input(BenchmarkId::from_parameter(name), g, |b, g| {
            b.iter(|| iso::canonical_form(black_box(g)))
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("extremal_census");
    group.sample_size(10);
    group.bench_function("n7_d4", |b| {
        b.iter(|| enumerate::extremal_census(black_box(7), black_box(4), false).unwrap())
    });
    group.finish();
}

criterion_group!(benches, connected_classes, canonical_form, census);
criterion_main!(benches);
