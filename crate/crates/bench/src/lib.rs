//! Shared fixtures for the benchmarks live in the benches themselves.
