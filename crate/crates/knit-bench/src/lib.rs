//! This crate exists to host the criterion benchmarks in `benches/`; it
//! exports nothing.
