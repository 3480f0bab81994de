use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use deficit::census::{enumerate_with, CensusConfig, ManifoldFilter};
use deficit::exec::Execution;
use deficit::recognition::SphereRecognizer;
use deficit::spectrum::{min_bracketing_k, target_range, DEFAULT_GAMMA_STAR};
use deficit::ValidityMode;

fn executions() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel { threads: 0 })]
}

fn census(c: &mut Criterion) {
    let recognizer = SphereRecognizer::default();
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    let cases = [
        (4, ValidityMode::Lenient, ManifoldFilter::Sphere),
        (4, ValidityMode::Lenient, ManifoldFilter::Any),
        (6, ValidityMode::Strict, ManifoldFilter::Sphere),
    ];
    for (k, mode, filter) in cases {
        for (name, exec) in executions() {
            let config = CensusConfig::new(k, mode).filter(filter).exec(exec);
            let id = BenchmarkId::new(name, format!("K{k}-{mode}-{filter}"));
            group.bench_function(id, |b| b.iter(|| enumerate_with(&config, Some(&recognizer)).unwrap()));
        }
    }
    group.finish();
}

fn bracketing_scan(c: &mut Criterion) {
    let (lo, _) = target_range(1.0).unwrap();
    let x = lo + 1e-3;
    let mut group = c.benchmark_group("min_bracketing_k");
    group.sample_size(10);
    for (name, exec) in executions() {
        group.bench_function(name, |b| b.iter(|| min_bracketing_k(x, 1.0, DEFAULT_GAMMA_STAR, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, census, bracketing_scan);
criterion_main!(benches);
