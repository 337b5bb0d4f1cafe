use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lapdiam::lab::{self, Analysis};
use lapdiam::{spectra, FamilySpec, Graph, RootCounter};

fn families() -> Vec<(String, Graph)> {
    ["gndt:n=10,d=5,t=3", "gndra:n=12,d=6,r=3,a=2", "h_abc:n=12,d=6,t=3,a=1,b=2,c=2"]
        .iter()
        .map(|s| {
            let spec: FamilySpec = s.parse().unwrap();
            (s.to_string(), spec.build().unwrap())
        })
        .collect()
}

fn char_poly(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_poly");
    for n in [10, 20, 40] {
        let g = Graph::path(n).unwrap();
        group.bench_with_input(BenchmarkId::new("path", n), &g, |b, g| {
            b.iter(|| spectra::laplacian_char_poly(black_box(g)))
        });
    }
    group.finish();
}

fn jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi");
    for n in [10, 50, 100] {
        let g = Graph::path(n).unwrap();
        group.bench_with_input(BenchmarkId::new("path", n), &g, |b, g| {
            b.iter(|| spectra::laplacian_spectrum(black_box(g)))
        });
    }
    group.finish();
}

fn root_counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("root_counter");
    for (name, g) in families() {
        let p = spectra::laplacian_char_poly(&g);
        group.bench_function(BenchmarkId::new("build", &name), |b| {
            b.iter(|| RootCounter::new(black_box(p.clone())).unwrap())
        });
        group.bench_function(BenchmarkId::new("analysis", &name), |b| {
            b.iter(|| Analysis::of_graph(black_box(&g)).engines_agree())
        });
        group.bench_function(BenchmarkId::new("check_bound", &name), |b| {
            b.iter(|| lab::check_bound(black_box(&g)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, char_poly, jacobi, root_counting);
criterion_main!(benches);
