//! Criterion benchmarks for the `brauer-core` kernels; see `benches/`.
