//! Criterion benchmarks for the `qurve` kernels; see `benches/kernels.rs`.
