//! Exact-arithmetic workbench for minimal border rank tensors in
//! `k^m ⊗ k^m ⊗ k^m` with `m <= 5` and their modules.
//!
//! Each capability has a runnable example under `examples/`, e.g.
//! `cargo run --example count_classes`.

pub mod apolar;
pub mod catalog;
pub mod degengraph;
pub mod error;
pub mod exact;
pub mod module;
pub mod pencils;
pub mod tensor;
pub mod triplealg;

pub use error::{Error, Result};
