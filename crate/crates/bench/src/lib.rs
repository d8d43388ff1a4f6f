//! Criterion benchmarks for galcoh-core live in `benches/`.
