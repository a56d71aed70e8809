//! Linearization of a rule on the Hilbert space spanned by finite
//! configurations.
//!
//! States are sparse: a [`Superposition`] maps configurations to amplitudes
//! and a [`DensityOp`] maps configuration pairs to matrix entries. Only
//! reductions to a finite [`Region`](crate::ca::Region) become dense.
//!
//! All iteration follows the total order on [`Config`](crate::ca::Config), so
//! floating-point sums are reproducible.

mod density;
mod io;
mod linear;
mod reduce;
mod superposition;

pub use density::{evolve, pure_density, DensityOp};
pub use io::{reduced_from_json, reduced_to_json, state_from_json, state_to_json};
pub use linear::{apply_f, apply_f_dagger, Evolved, Quantization};
pub use reduce::{
    expectation_local, reduce, reduce_sparse, trace_distance, ReducedMatrix, SparseReduced, MAX_REDUCED_DIM,
};
pub use superposition::{inner_product, make_superposition, Superposition};

pub use num_complex::Complex64;

use thiserror::Error;

use crate::debruijn::DeBruijnError;

/// State-level comparison tolerance.
pub const STATE_TOL: f64 = 1e-9;
/// Vector-level comparison tolerance.
pub const VECTOR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("all amplitudes cancel")]
    ZeroVector,
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("rule is not open and no preimage halo was supplied")]
    HaloUnavailable,
    #[error("reduction to {cells} cells needs dimension {dim}, above the cap {cap}")]
    RegionTooLarge { cells: usize, dim: usize, cap: usize },
    #[error("reduced matrices live on different regions")]
    RegionMismatch,
    #[error("malformed state file: {0}")]
    BadState(String),
    #[error(transparent)]
    DeBruijn(#[from] DeBruijnError),
}
