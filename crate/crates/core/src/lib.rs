//! Vulnerability analysis and minimal-norm destabilization of stable
//! linear networks via the dynamical structure function.
//!
//! Pipeline: build or load a linear model, compute its dynamical structure
//! function `(Q, P)` over the exposed states, rank every link by the
//! H-infinity norm of the corresponding entry of `H = (I - Q)^-1`,
//! synthesize the smallest single-link rational perturbation that removes
//! asymptotic stability, realize the perturbed system back in the time
//! domain with convolution states, and simulate the resulting divergence.

pub mod dsf;
pub mod error;
pub mod hinf;
pub mod netmodel;
pub mod perturb;
pub mod ratfun;
pub mod realize;
pub mod simulate;

pub use error::{Error, Result};
pub use ratfun::{RationalFunction, TransferMatrix};
