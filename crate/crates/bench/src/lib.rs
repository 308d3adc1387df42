//! Benchmark harness crate; see benches/ for the criterion targets.
