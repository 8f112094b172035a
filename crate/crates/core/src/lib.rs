//! Deformed Fredholm determinants `det(I - γ K_s)` of the confluent
//! hypergeometric kernel on the symmetric interval `(-s, s)`.
//!
//! The determinant is computed by four routes that share no numerical
//! machinery beyond the special functions:
//!
//! * [`fredholm`]: Nyström discretization of the integral operator (ground truth),
//! * [`asymptotics`]: the closed-form large-gap formula with its Barnes-G constant,
//! * [`painleve`]: integration of the coupled Painlevé V Hamiltonian system,
//! * [`toeplitz`]: the scaling limit of Fisher–Hartwig Toeplitz determinants.
//!
//! [`stats`] turns the operator spectrum into counting statistics of the
//! underlying determinantal point process.

pub mod asymptotics;
mod error;
pub mod fredholm;
pub mod kernel;
mod ode;
mod par;
pub mod painleve;
pub mod quadrature;
pub mod specfun;
pub mod stats;
pub mod toeplitz;

pub use error::{Error, Result};
pub use kernel::KernelParams;
pub use num_complex::Complex64;
