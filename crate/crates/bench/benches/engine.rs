use beid_bench::{bipartite_level, certified_fixtures};
use beid_core::census::run_census_on;
use beid_core::{build_dual_from, canonical_form, classify, enumerate_cut_sets};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn cut_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_cut_sets");
    for (name, g) in certified_fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| enumerate_cut_sets(black_box(g)))
        });
    }
    group.finish();
}

fn dual_graph(c: &mut Criterion) {
    let mut group = c.benchmark_group("dual_graph_and_diameter");
    for (name, g) in certified_fixtures() {
        let fam = enumerate_cut_sets(&g);
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| build_dual_from(black_box(g), &fam).unwrap().diameter())
        });
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    for (name, g) in certified_fixtures().into_iter().take(4) {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| classify(black_box(g)))
        });
    }
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let level = bipartite_level(8);
    c.bench_function("canonical_form/bipartite_n8", |b| {
        b.iter(|| level.iter().map(canonical_form).count())
    });
}

fn census(c: &mut Criterion) {
    let graphs: Vec<_> = (2..=8).flat_map(bipartite_level).collect();
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    group.bench_function("bipartite_n_le_8", |b| {
        b.iter(|| run_census_on(black_box(&graphs), 1, false).unwrap())
    });
    group.bench_function("generate_bipartite_n9", |b| b.iter(|| bipartite_level(9)));
    group.finish();
}

criterion_group!(
    benches,
    cut_sets,
    dual_graph,
    classification,
    canonical,
    census
);
criterion_main!(benches);
