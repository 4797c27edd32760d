//! Eigenvalues of sums of admissible pseudo-Hermitian matrices in signature
//! `(p, q)`.
//!
//! The crate computes classified spectra of matrices that are self-adjoint
//! for the indefinite pairing `⟨z, w⟩ = Σ_{i≤p} z_i w̄_i − Σ_{j>p} z_j w̄_j`
//! and checks, on seeded random instances, the variational identities and
//! eigenvalue inequalities that hold in the admissible cone: Courant–Fischer
//! and Ky Fan type characterizations, Weyl, Lidskii–Wielandt and
//! Thompson–Freede type inequalities for sums, and membership of sum spectra
//! in the polyhedral region `Π + 𝒞`.

pub mod error;
pub mod checks;
pub mod geometry;
pub mod harness;
mod linalg;
pub mod minkowski;
pub mod model;
pub mod polyhedral;
pub mod sampling;
pub mod spectral;

pub use error::{Error, Result};
