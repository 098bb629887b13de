use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rpoisson_core::catalog;
use rpoisson_core::{CochainComplex, Theory};

fn poisson_cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("cohomology");
    group.sample_size(10);
    for (id, theory, degree) in [
        ("heisenberg3", Theory::PA, 2),
        ("heisenberg3", Theory::CE, 3),
        ("po_pi2", Theory::PA, 2),
        ("po_pi4", Theory::PA, 2),
    ] {
        let p = (catalog::lookup(id).unwrap().build)();
        let label = format!("{id}/{theory}");
        group.bench_with_input(BenchmarkId::new(label, degree), &degree, |b, &n| {
            // A fresh complex each time: the space cache would otherwise hide the work.
            b.iter(|| CochainComplex::for_algebra(&p, theory).unwrap().cohomology(n).unwrap().dim_h)
        });
    }
    group.finish();
}

criterion_group!(benches, poisson_cohomology);
criterion_main!(benches);
