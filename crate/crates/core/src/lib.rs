//! Vacuum stress and Casimir torque for a perfectly conducting wedge.
//!
//! The crate follows the Green-function route for a massless scalar field
//! between two Dirichlet half-planes meeting at opening angle `beta`:
//!
//! * [`specfun`]: modified Bessel functions `I_nu`, `K_nu` of real order,
//!   with overflow-safe scaled forms.
//! * [`quad`]: double-exponential quadrature on `[0, inf)`, used to check the
//!   radial integral identity that turns the mode sum into a power series.
//! * [`wedge`]: point-split mode sums, free-space subtraction, the
//!   `xi -> 1` extrapolation, the closed-form stress, the torque density and
//!   the parallel-plate limit.
//! * [`green`]: the Euclidean radial kernel `I_nu K_nu`, with finite-difference
//!   checks of the radial equation, the source jump and the Dirichlet walls.
//!
//! Everything here is `no_std` (with `alloc`) and pure: no IO, no global
//! state. All quantities are in natural units `hbar = c = 1` unless a
//! [`wedge::PhysicalConstants`] is passed explicitly.
#![no_std]
#![deny(missing_docs)]
#![allow(clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod extrapolate;
pub mod green;
pub mod quad;
pub mod specfun;
pub mod summation;
pub mod wedge;

pub use error::{Error, Result};
