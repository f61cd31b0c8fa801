//! Purity dynamics of a qubit steered by repeated measurements of a coupled
//! partner.
//!
//! Finding the partner in the same state after every interval applies a
//! fixed non-unitary map `V` to the qubit. Iterating it drives the qubit toward
//! the dominant right eigenvector of `V`, but the purity need not rise
//! monotonically on the way. This crate provides:
//!
//! - [`linalg`]: small complex matrices and a biorthogonal 2×2 eigensolver,
//! - [`purification`]: the conditional evolution, its closed-form purity and
//!   the dip/peak/monotonicity conditions,
//! - [`model`]: the two-qubit flip-flop model that produces `V`,
//! - [`sweep`]: the monotonicity-threshold map over population and interval.

pub mod error;
pub mod linalg;
pub mod model;
pub mod purification;
pub mod sweep;

pub use error::{Error, Result};
