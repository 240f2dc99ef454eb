//! Lah numbers realized as weighted path counts in a planar network.
//!
//! Everything here is exact: matrix entries, edge weights and path weights are
//! arbitrary-precision integers. The crate is `no_std` and only needs `alloc`.
//!
//! - [`linalg`]: exact integer matrices, minors and fraction-free determinants.
//! - [`lah`]: Lah numbers by recurrence, closed form and exhaustive enumeration,
//!   the Lah matrix, and the rising/falling factorial identity.
//! - [`network`]: the layered planar network whose weight matrix is the Lah
//!   matrix, its unit-weight (Pascal) twin, weight matrices and path listing.
//! - [`lgv`]: brute-force check that minors equal sums over vertex-disjoint
//!   path families.
//! - [`tnn`]: total non-negativity certificates and sampled sign-variation
//!   experiments.
//!
//! Row and column indices are 1-based in every public interface.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;

pub mod lah;
pub mod lgv;
pub mod linalg;
pub mod network;
pub mod tnn;

pub use error::{Axis, Error, Result};
pub use lah::{IntPolynomial, LahMatrix, LahTable};
pub use lgv::{LindstromReport, PathFamily};
pub use linalg::{ExactMatrix, IndexSet};
pub use network::{Network, Path, VertexId, VertexLabel};
pub use tnn::{TnnReport, VariationReport};

pub use num_bigint::{BigInt, BigUint};
