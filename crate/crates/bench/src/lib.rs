//! Criterion benchmarks for the premod crate live under `benches/`.
