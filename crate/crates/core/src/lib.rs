//! Clifford prolate spheroidal wave functions on the unit ball.
//!
//! The crate computes the radial spectral data of the Clifford-valued
//! prolate functions (Galerkin matrices in a Clifford-Legendre basis),
//! evaluates the resulting fields for `m = 2, 3`, and checks them against
//! the finite Fourier transform and the time-frequency limiting operator.
pub mod accumulation;
pub mod clifford;
pub mod cpswf;
mod dd;
pub mod error;
pub mod galerkin;
pub mod legendre;
pub mod monogenics;
pub mod operators;
pub mod special;

pub use error::{Error, Result};
