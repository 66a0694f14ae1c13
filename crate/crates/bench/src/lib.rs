//! Criterion benchmarks for the checker live in `benches/`.
