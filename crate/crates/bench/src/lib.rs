//! Criterion benchmarks for gentle-ext; see `benches/`.
