use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use artin1_core::counting::{surface_count_with, Engine, KodairaNeron};
use artin1_core::curve::find_supersingular;
use artin1_core::pencil::candidate_models;

fn engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("surface_count_f_p2");
    group.sample_size(10);
    for p in [23u64, 47] {
        let curve = find_supersingular(p).unwrap();
        let pencil = candidate_models(&curve).unwrap().remove(0);
        for (name, engine) in [
            ("sequential", Engine::Sequential),
            ("parallel", Engine::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(name, p), &pencil, |b, pencil| {
                b.iter(|| surface_count_with(pencil, 2, engine, &KodairaNeron).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, engines);
criterion_main!(benches);
