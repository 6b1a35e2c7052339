use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperchrom::spectral::{edge_spectrum, vertex_spectrum, DEFAULT_CLUSTER_TOL};
use hyperchrom_bench::{family_ladder, random_ladder};

fn spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("vertex_spectrum");
    for (name, h) in family_ladder().into_iter().chain(random_ladder(&[8, 16, 32, 64])) {
        group.bench_with_input(BenchmarkId::from_parameter(name), &h, |b, h| {
            b.iter(|| vertex_spectrum(h, DEFAULT_CLUSTER_TOL).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("edge_spectrum");
    for (name, h) in random_ladder(&[8, 16, 32]) {
        group.bench_with_input(BenchmarkId::from_parameter(name), &h, |b, h| {
            b.iter(|| edge_spectrum(h, DEFAULT_CLUSTER_TOL).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, spectra);
criterion_main!(benches);
