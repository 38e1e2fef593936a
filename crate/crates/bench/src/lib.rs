//! Criterion benchmarks for `gbquad`; see `benches/`.
