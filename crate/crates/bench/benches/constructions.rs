use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use kempe_core::coloring::{chromatic_number, unique_optimal_coloring};
use kempe_core::enumerate::canonical_masks;
use kempe_core::generators::{classic, grid3k, rotational_tournament, tournament_double_cover};
use kempe_core::minors::{hadwiger_number, kempe_clique_minor_k6, shallow_minor_rooted};
use kempe_core::Graph;

fn path(n: usize) -> Graph {
    let mut g = Graph::new(n).unwrap();
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    g
}

fn chromatic(c: &mut Criterion) {
    let mut group = c.benchmark_group("chromatic_number");
    for k in [3, 5, 8] {
        let (g, _) = grid3k(k).unwrap();
        group.bench_with_input(BenchmarkId::new("grid3k", k), &g, |b, g| b.iter(|| chromatic_number(black_box(g))));
    }
    group.finish();
}

fn hadwiger(c: &mut Criterion) {
    let mut group = c.benchmark_group("hadwiger_number");
    group.sample_size(10);
    let (grid, _) = grid3k(3).unwrap();
    for (name, g) in [("prism", classic::prism()), ("petersen", classic::petersen()), ("grid3k_3", grid)] {
        group.bench_function(name, |b| b.iter(|| hadwiger_number(black_box(&g))));
    }
    let (cover, _) = tournament_double_cover(&rotational_tournament(2).unwrap()).unwrap();
    let g = cover.complement();
    group.bench_function("cover_complement_10", |b| b.iter(|| hadwiger_number(black_box(&g))));
    group.finish();
}

fn shallow(c: &mut Criterion) {
    let mut group = c.benchmark_group("shallow_minor_rooted");
    for n in [8, 16, 32, 64] {
        let g = path(n).complement();
        let col = unique_optimal_coloring(&g).unwrap();
        let t = col.transversal_at(0).unwrap();
        group.bench_with_input(BenchmarkId::new("path_complement", n), &n, |b, _| {
            b.iter(|| shallow_minor_rooted(black_box(&g), &col, t))
        });
    }
    group.finish();
}

fn kempe_k6(c: &mut Criterion) {
    let mut group = c.benchmark_group("kempe_clique_minor_k6");
    for k in [3, 4, 5, 6] {
        let (g, col) = grid3k(k).unwrap();
        group.bench_with_input(BenchmarkId::new("grid3k", k), &k, |b, _| {
            b.iter(|| kempe_clique_minor_k6(black_box(&g), &col))
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_enumeration");
    group.sample_size(10);
    for n in [5, 6, 7] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| canonical_masks(n, &|_| true).unwrap().len())
        });
    }
    group.finish();
}

criterion_group!(benches, chromatic, hadwiger, shallow, kempe_k6, enumeration);
criterion_main!(benches);
