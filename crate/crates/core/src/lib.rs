//! Optimal discrimination of symmetric multi-mode coherent states, pure and
//! phase-randomized.
//!
//! The crate is organized bottom-up:
//!
//! - [`fock`]: truncated Fock-space numerics (subspace enumeration, coherent
//!   amplitudes, dense Hermitian matrices, a complex Jacobi eigensolver).
//! - [`symmetric`]: the named state families, per-subspace pure states, Gram
//!   matrices and their circulant (DFT) spectra.
//! - [`phase_rand`]: photon-number decomposition of phase-randomized states.
//! - [`discrimination`]: closed-form minimum-error, unambiguous, one-bit and
//!   cheating probabilities.
//! - [`optics`]: balanced beam-splitter networks acting on coherent amplitudes.
//! - [`oracle`]: brute-force square-root and Helstrom measurements on dense
//!   matrices, used to cross-check everything above.

pub mod discrimination;
pub mod error;
pub mod fock;
pub mod optics;
pub mod oracle;
pub mod phase_rand;
pub mod symmetric;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Default Poisson tail tolerance for series truncation.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
