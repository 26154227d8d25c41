//! Sequential against rayon-parallel execution of the enumeration and A(C) stages.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use meshknit::classification::{enumerate_configurations, Method};
use meshknit::presentations::fundamental_algebras;
use meshknit::{DynkinTree, Exec};

fn modes() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (name, method) in [("E6", Method::Patterns), ("E7", Method::Patterns), ("D6", Method::Bruteforce), ("E6", Method::Bruteforce)] {
        let t: DynkinTree = name.parse().unwrap();
        for (mode, exec) in modes() {
            let id = BenchmarkId::new(format!("{name}/{method:?}"), mode);
            group.bench_with_input(id, &exec, |b, &exec| b.iter(|| enumerate_configurations(&t, method, exec).len()));
        }
    }
    group.finish();
}

fn fundamentals(c: &mut Criterion) {
    // Cone construction inside the A(C) engine always uses the default strategy, so this
    // measures the batch over configurations.
    let t: DynkinTree = "A6".parse().unwrap();
    let configs = enumerate_configurations(&t, Method::Patterns, Exec::Parallel);
    let mut group = c.benchmark_group("fundamental_algebras");
    group.sample_size(10);
    for (mode, exec) in modes() {
        group.bench_function(BenchmarkId::new("A6", mode), |b| {
            b.iter(|| {
                meshknit::exec::map(exec, configs.clone(), |c| fundamental_algebras(&c).map(|v| v.len()).unwrap_or(0))
                    .into_iter()
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, fundamentals);
criterion_main!(benches);
