//! Criterion benchmarks for the noonsim kernels; see `benches/`.
