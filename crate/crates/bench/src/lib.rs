//! Criterion benchmarks for `heatsphere`; see `benches/`.
