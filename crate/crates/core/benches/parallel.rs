//! Compares the sequential and rayon row-processing paths of the scanner
//! on two representative workloads: a dense exhaustive sweep and a
//! seeded random batch at a larger vertex count.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use holecert::exact::SolveBudget;
use holecert::scan::{instances, process_rows_seq, ScanConfig, ScanMode};

fn exhaustive_cfg() -> ScanConfig {
    ScanConfig {
        n_lo: 5,
        n_hi: 5,
        mode: ScanMode::Exhaustive,
        samples: 0,
        edge_probability: 0.0,
        seed: 0,
        hole_cap: 3,
        budget: SolveBudget { max_k: 4, node_limit: 5_000_000, time_hint_secs: 10 },
    }
}

fn random_cfg() -> ScanConfig {
    ScanConfig {
        n_lo: 8,
        n_hi: 8,
        mode: ScanMode::Random,
        samples: 60,
        edge_probability: 0.3,
        seed: 7,
        hole_cap: 3,
        budget: SolveBudget { max_k: 5, node_limit: 5_000_000, time_hint_secs: 10 },
    }
}

fn bench_scan_rows(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_rows");
    group.sample_size(10);
    for (label, cfg) in [("exhaustive_n5", exhaustive_cfg()), ("random_n8", random_cfg())] {
        let inst = instances(&cfg);
        group.bench_with_input(BenchmarkId::new("sequential", label), &inst, |b, inst| {
            b.iter(|| process_rows_seq(inst, &cfg))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", label), &inst, |b, inst| {
            b.iter(|| holecert::scan::process_rows_par(inst, &cfg))
        });
    }
    group.finish();
}

fn bench_certify_fixtures(c: &mut Criterion) {
    use holecert::corpus::{self, fixtures};
    let mut group = c.benchmark_group("certify");
    for (label, g) in [
        ("domino", fixtures::domino()),
        ("housex", fixtures::house_x()),
        ("eared_fused_4_4", corpus::eared_fused(4, 4)),
    ] {
        group.bench_function(label, |b| b.iter(|| holecert::certify(&g).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_scan_rows, bench_certify_fixtures);
criterion_main!(benches);
