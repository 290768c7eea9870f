//! Benchmarks for the numerical kernels live in `benches/`.

pub use ucnorm;
