use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rauzy_core::classes::{enumerate_labeled, EnumerateOptions, DEFAULT_BUDGET};
use rauzy_core::theorem::sweep;
use rauzy_core::{Execution, ReducedPermutation};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn labeled_class(c: &mut Criterion) {
    let seeds = [
        ("tau10", ReducedPermutation::symmetric(10).unwrap()),
        (
            "h1111",
            ReducedPermutation::from_word(&[9, 1, 4, 3, 2, 5, 8, 7, 6]).unwrap(),
        ),
    ];
    let mut group = c.benchmark_group("labeled_class");
    group.sample_size(10);
    for (name, seed) in &seeds {
        let labeled = seed.embed();
        for (mode, execution) in MODES {
            let opts = EnumerateOptions {
                budget: DEFAULT_BUDGET,
                execution,
            };
            group.bench_with_input(BenchmarkId::new(mode, name), &labeled, |b, p| {
                b.iter(|| black_box(enumerate_labeled(p, &opts).unwrap().len()))
            });
        }
    }
    group.finish();
}

fn ratio_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (mode, execution) in MODES {
        group.bench_function(BenchmarkId::new(mode, "d<=7"), |b| {
            b.iter(|| black_box(sweep(7, DEFAULT_BUDGET, execution).unwrap().len()))
        });
    }
    group.finish();
}

criterion_group!(benches, labeled_class, ratio_sweep);
criterion_main!(benches);
