//! Exact and numerical tools for parametrized multiple series
//! `sum P(n_1)/P(n_r) prod (n_i + alpha)^{-k_i}` and the quasi-shuffle
//! algebra that governs their linear relations.
//!
//! The exact layer ([`words`], [`algebra`], [`linalg`], [`relations`],
//! [`qsym`], [`lie`]) works with rational coefficients only. The
//! [`numerics`] layer evaluates series and iterated integrals in `f64` with
//! explicit error estimates.

pub mod algebra;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod numerics;
pub mod par;
pub mod qsym;
pub mod relations;
pub mod words;

pub use algebra::{LinComb, Q};
pub use error::{Error, Result};
pub use words::{Composition, Letter, Word, WordSpace, XYWord};
