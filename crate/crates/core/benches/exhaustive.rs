use ballspace::category::verify_topologicity;
use ballspace::finite::all_spaces;
use ballspace::verify::verify_universal_properties;
use ballspace::{Config, Execution};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn classify_all(c: &mut Criterion) {
    let spaces = all_spaces(3, None).unwrap();
    let mut group = c.benchmark_group("classify_all_spaces_n3");
    for (name, exec) in MODES {
        let cfg = Config::default().with_execution(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                for s in &spaces {
                    black_box(s.classify(&cfg).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn universal(c: &mut Criterion) {
    let mut group = c.benchmark_group("universal_properties_size2");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(verify_universal_properties(2, exec).unwrap()))
        });
    }
    group.finish();
}

fn topologicity(c: &mut Criterion) {
    let mut group = c.benchmark_group("topologicity_size2");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(verify_topologicity(2, 2, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, classify_all, universal, topologicity);
criterion_main!(benches);
