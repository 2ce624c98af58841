//! Criterion benchmarks for the `walgebra` engine live in `benches/engine.rs`.
//! This crate re-exports the engine so the benches have a single import root.

pub use walgebra;
