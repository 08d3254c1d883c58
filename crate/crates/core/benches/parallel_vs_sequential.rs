use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mcat_core::par::Exec;
use mcat_core::presentation::ObjectWord;
use mcat_core::suite::{end_algebra_completed, load_builtin, run_suite, span_subspaces, SuiteOptions};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn completion(c: &mut Criterion) {
    let mut group = c.benchmark_group("groebner completion");
    group.sample_size(10);
    for (name, d) in [("symmetric", 4), ("wreath", 3)] {
        let p = load_builtin(name).unwrap();
        let x = ObjectWord::power(0, d);
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(format!("{name} d={d}"), mode), &exec, |b, &exec| {
                b.iter(|| end_algebra_completed(&p, &x, None, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn spans(c: &mut Criterion) {
    let mut group = c.benchmark_group("tensor framed span");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new("a a a, length <= 4", mode), |b| {
            b.iter(|| span_subspaces(3, 4, 3, exec).unwrap())
        });
    }
    group.finish();
}

fn interchange(c: &mut Criterion) {
    let mut group = c.benchmark_group("interchange cases");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new("1000 cases", mode), |b| {
            b.iter(|| run_suite("interchange", &SuiteOptions { seed: 0, cases: 1000, exec }).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, completion, spans, interchange);
criterion_main!(benches);
