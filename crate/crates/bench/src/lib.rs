//! Benchmarks for the period engine live in `benches/`.
