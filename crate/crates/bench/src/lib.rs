//! Criterion benchmarks for `eicat-core`; see `benches/verify.rs`.
