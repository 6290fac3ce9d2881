//! Bench-only crate; everything lives in `benches/`.
