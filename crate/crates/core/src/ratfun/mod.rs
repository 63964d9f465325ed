//! Exact polynomial and rational-function algebra.

pub mod func;
pub mod matrix;
pub mod pfd;
pub mod poly;
pub mod roots;

pub use func::RationalFunction;
pub use matrix::TransferMatrix;
pub use pfd::{partial_fractions, PartialFractionForm, PfdTerm};
pub use poly::{format_rational, parse_rational, to_f64, Polynomial};
pub use roots::{complex_roots_f64, poly_roots, RootMult};
