//! Criterion benchmarks for the certified numerics; see `benches/`.
