//! Benchmark-only crate; see `benches/packing.rs`.
