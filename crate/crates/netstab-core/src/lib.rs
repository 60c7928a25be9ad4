//! Linear stability of two-species reaction-diffusion dynamics with inertial
//! (finite propagation speed) transport on directed networks.
//!
//! The per-mode problem reduces to a monic quartic with complex coefficients,
//! one quartic per Laplacian eigenvalue. Stability is decided by a
//! Routh-Hurwitz table extended to complex coefficients; root finding and
//! time-domain simulation provide independent cross-checks.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std` feature
//! only switches float intrinsics and error-trait plumbing.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod math;

pub mod dispersion;
pub mod eigen;
pub mod models;
pub mod network;
pub mod polynomial;
pub mod rh;
pub mod scan;
pub mod sim;

pub use num_complex::Complex64;

pub use dispersion::{ModeVerdict, NetworkVerdict, TransportParams};
pub use models::{BrusselatorParams, JacobianEntries, ReactionModel};
pub use network::{AdjacencyMatrix, DirectedLaplacian, LaplacianSpectrum};
pub use polynomial::{ComplexPolynomial, ComplexQuartic};
pub use rh::{RhTable, StabilityVerdict};
pub use scan::RegionMap;
pub use sim::{GrowthEstimate, SimState};
