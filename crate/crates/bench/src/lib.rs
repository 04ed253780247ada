//! Benchmarks for `wrightml` live in `benches/`; run them with `cargo bench -p wrightml-bench`.
