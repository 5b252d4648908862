use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mop_core::explorer::{dimension_table, Engine, ExplorerOptions};
use mop_core::orthopoly::rodrigues_sequence;
use mop_core::par::Execution;
use mop_core::scalar::rat;
use mop_core::weights::{build_weight, constrained_nu};

fn execs() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn dimension_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("dimension_table");
    g.sample_size(10);
    let w2 = build_weight(2, rat(1, 2), vec!["1+1*i".parse().unwrap()]).unwrap();
    let w3 = build_weight(3, rat(1, 3), constrained_nu(3, &rat(2, 1)).unwrap()).unwrap();
    for (name, exec) in execs() {
        let opts = ExplorerOptions {
            engine: Engine::Modular,
            exec,
            ..Default::default()
        };
        g.bench_with_input(BenchmarkId::new("N=2 k<=5", name), &opts, |b, o| {
            b.iter(|| dimension_table(black_box(&w2), 5, o).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("N=3 k<=4", name), &opts, |b, o| {
            b.iter(|| dimension_table(black_box(&w3), 4, o).unwrap())
        });
    }
    g.finish();
}

fn rodrigues(c: &mut Criterion) {
    let mut g = c.benchmark_group("rodrigues_sequence");
    let a = "1/2+1/3*i".parse().unwrap();
    for (name, exec) in execs() {
        g.bench_function(BenchmarkId::new("n<16", name), |b| {
            b.iter(|| rodrigues_sequence(16, black_box(&rat(1, 3)), &a, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, dimension_tables, rodrigues);
criterion_main!(benches);
