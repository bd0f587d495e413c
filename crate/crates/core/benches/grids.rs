use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qtshuffle::verify::{run, Suite};

fn workers() -> usize {
    std::thread::available_parallelism().map_or(2, |n| n.get().max(2))
}

fn grids(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for suite in [Suite::MainTheorem, Suite::Paths, Suite::Recursion] {
        // Warm the shared tables so both runs measure grid execution only.
        run(suite, 5, 1);
        group.bench_with_input(BenchmarkId::new("sequential", suite), &suite, |b, s| b.iter(|| run(*s, 5, 1)));
        let jobs = workers();
        group.bench_with_input(BenchmarkId::new(format!("parallel-{jobs}"), suite), &suite, |b, s| {
            b.iter(|| run(*s, 5, jobs))
        });
    }
    group.finish();
}

criterion_group!(benches, grids);
criterion_main!(benches);
