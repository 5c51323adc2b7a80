//! Criterion benchmarks for synlat-core live in `benches/`.
