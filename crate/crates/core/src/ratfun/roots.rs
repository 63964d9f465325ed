//! Polynomial root finding.
//!
//! Exact polynomials go through a square-free decomposition first, so
//! multiplicities are exact and the numeric solver only ever sees simple
//! roots. The numeric kernel is companion-matrix eigenvalues followed by
//! Newton polishing.

use super::poly::Polynomial;
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Tolerance for recognizing coincident roots from a numeric solve.
pub const CLUSTER_TOL: f64 = 1e-8;

const NEWTON_ITERS: usize = 50;

/// A root paired with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootMult {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Roots of a polynomial given by f64 coefficients in ascending powers.
/// Leading and trailing zero coefficients are handled; roots at the origin
/// come back explicitly.
pub fn complex_roots_f64(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last().is_some_and(|&x| x == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Ok(vec![]);
    }
    let mut roots = Vec::new();
    let mut lead = 0usize;
    while c[lead] == 0.0 {
        roots.push(Complex64::new(0.0, 0.0));
        lead += 1;
    }
    let c = &c[lead..];
    let n = c.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let lc = c[n];
    if n == 1 {
        roots.push(Complex64::new(-c[0] / lc, 0.0));
        return Ok(roots);
    }
    let companion = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -c[i] / lc
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eigs = companion.complex_eigenvalues();
    for ev in eigs.iter() {
        let mut z = *ev;
        for _ in 0..NEWTON_ITERS {
            let (p, dp) = horner_with_derivative(c, z);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            z -= step;
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::RootsNotConverged {
                iterations: NEWTON_ITERS,
            });
        }
        roots.push(z);
    }
    // Snap near-real roots onto the axis; real-coefficient inputs have
    // conjugate-symmetric root sets.
    for z in roots.iter_mut() {
        if z.im.abs() <= 1e-9 * (1.0 + z.norm()) {
            z.im = 0.0;
        }
    }
    Ok(roots)
}

fn horner_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of an exact polynomial, with multiplicities.
///
/// Multiplicities come from exact square-free factorization, so a repeated
/// factor like `(s+1)^2` is recognized structurally. Roots from distinct
/// square-free factors that still land within `CLUSTER_TOL` of each other
/// are merged by adding multiplicities.
pub fn poly_roots(p: &Polynomial) -> Result<Vec<RootMult>> {
    let deg = match p.degree() {
        None | Some(0) => return Ok(vec![]),
        Some(d) => d,
    };
    let mut all: Vec<RootMult> = Vec::with_capacity(deg);
    for (factor, mult) in p.square_free_factors() {
        for root in complex_roots_f64(&factor.to_f64_coeffs())? {
            merge_root(&mut all, root, mult);
        }
    }
    // Residual certification against the full polynomial.
    let coeffs = p.to_f64_coeffs();
    let scale = coeffs.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    for r in &all {
        let (val, _) = horner_with_derivative(&coeffs, r.value);
        let bound = 1e-10 * scale * (1.0 + r.value.norm()).powi(deg as i32);
        if val.norm() > bound.max(1e-300) {
            return Err(Error::RootsNotConverged {
                iterations: NEWTON_ITERS,
            });
        }
    }
    all.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap()
    });
    Ok(all)
}

fn merge_root(roots: &mut Vec<RootMult>, value: Complex64, multiplicity: usize) {
    for r in roots.iter_mut() {
        if (r.value - value).norm() < CLUSTER_TOL {
            r.multiplicity += multiplicity;
            return;
        }
    }
    roots.push(RootMult {
        value,
        multiplicity,
    });
}
