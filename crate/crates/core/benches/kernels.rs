use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cftkit_core::minimal::minimal_modular_data;
use cftkit_core::modinv::{
    commutant_basis, enumerate_physical_from, expected_invariants, verify_invariant_with,
};
use cftkit_core::rcft::check_modular_relations_with;
use cftkit_core::wzw::sl2_modular_data;
use cftkit_core::Exec;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("relations");
    group.sample_size(10);
    for k in [16u32, 28] {
        let d = sl2_modular_data(k);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, k), &d, |b, d| {
                b.iter(|| check_modular_relations_with(black_box(d), exec))
            });
        }
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_invariant");
    group.sample_size(10);
    let d = minimal_modular_data(10).expect("model data");
    let rows = expected_invariants(&d.theory).expect("table rows");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                for (_, x) in &rows {
                    verify_invariant_with(black_box(x), &d, exec).expect("verification");
                }
            })
        });
    }
    group.finish();
}

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for k in [16u32, 28] {
        let d = sl2_modular_data(k);
        let basis = commutant_basis(&d);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, k), &d, |b, d| {
                b.iter(|| {
                    enumerate_physical_from(black_box(d), &basis, None, exec).expect("search")
                })
            });
        }
    }
    group.finish();
}

criterion_group!(kernels, relations, verify, enumerate);
criterion_main!(kernels);
