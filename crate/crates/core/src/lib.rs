//! Lattice sums by the two-dimensional Euler-MacLaurin formula.
//!
//! The crate evaluates Weil's elliptic functions `E_k(a, W)` both by direct
//! Eisenstein summation and through an integral representation obtained
//! from the first-order Euler-MacLaurin formula in two dimensions, and the
//! Hurwitz-Lerch zeta function by its series and by the analogous
//! one-dimensional integral representation.

pub mod accel;
pub mod bernoulli;
pub mod cli;
pub mod complex;
pub mod em2d;
pub mod error;
pub mod lattice;
pub mod lerch;
pub mod quadrature;
pub mod weil;

pub use complex::Complex;
pub use error::{Error, Result};
pub use lattice::Lattice;
