//! Criterion benchmarks for the metric engines, Minkowski sums and the
//! lattice oracle; see `benches/metrics.rs`.
