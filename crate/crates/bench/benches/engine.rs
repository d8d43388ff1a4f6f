use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use galcoh_core::linalg::{smith_mod, smith_normal_form};
use galcoh_core::module::regular_module;
use galcoh_core::{cohomology_group, lookup, propdata_certificate, IntMatrix, ModMatrix};
use num_bigint::BigInt;

/// Deterministic dense test matrix with a nontrivial Smith form.
fn test_matrix(size: usize) -> IntMatrix {
    IntMatrix::from_fn(size, size, |i, j| BigInt::from(((i * 7 + j * 13 + i * j) % 23) as i64 - 11))
}

fn smith(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith");
    for size in [8, 16, 32] {
        let a = test_matrix(size);
        group.bench_with_input(BenchmarkId::new("integer", size), &a, |b, a| b.iter(|| smith_normal_form(black_box(a))));
        let m: ModMatrix = a.to_mod(12);
        group.bench_with_input(BenchmarkId::new("mod12", size), &m, |b, m| b.iter(|| smith_mod(black_box(m), true, true)));
    }
    group.finish();
}

fn h2_regular(c: &mut Criterion) {
    let mut group = c.benchmark_group("h2_regular");
    group.sample_size(10);
    for name in ["V4", "D4", "Q8", "C2xC2xC2"] {
        let g = lookup(name).unwrap();
        let m = Arc::new(regular_module(&g, 4));
        group.bench_function(name, |b| b.iter(|| cohomology_group(black_box(&m), 2).unwrap()));
    }
    group.finish();
}

fn propdata(c: &mut Criterion) {
    let mut group = c.benchmark_group("propdata_certificate");
    for (name, n) in [("V4", 4), ("D4", 8), ("C2xC6", 12), ("Dic3", 12)] {
        let g = lookup(name).unwrap();
        group.bench_function(format!("{name}/n={n}"), |b| b.iter(|| propdata_certificate(black_box(&g), n).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, smith, h2_regular, propdata);
criterion_main!(benches);
