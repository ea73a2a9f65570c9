//! Generalized Davenport-Mahler root separation bounds for arbitrary graphs,
//! verified with certified interval arithmetic.

pub mod arith;
pub mod cli;
pub mod divdiff;
pub mod dmbound;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod poly;
pub mod roots;

pub use error::{Error, Result};
