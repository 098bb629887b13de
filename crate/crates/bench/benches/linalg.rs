use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rpoisson_bench::random_matrix;

fn rank_and_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2");
    for n in [64usize, 256, 1024] {
        let m = random_matrix(n, n, n as u64);
        group.bench_with_input(BenchmarkId::new("rank", n), &m, |b, m| b.iter(|| black_box(m).rank()));
        group.bench_with_input(BenchmarkId::new("kernel", n), &m, |b, m| {
            b.iter(|| black_box(m).kernel_basis().dim())
        });
    }
    group.finish();
}

criterion_group!(benches, rank_and_kernel);
criterion_main!(benches);
