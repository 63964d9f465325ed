//! Shared fixtures for the integration suites: the five-agent case-study
//! system and small helpers.

// Not every suite uses every fixture.
#![allow(dead_code)]

use netvuln::netmodel::LinearModel;
use netvuln::ratfun::{parse_rational, Polynomial, RationalFunction};
use num::rational::BigRational;

pub fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

pub fn poly(coeffs: &[&str]) -> Polynomial {
    Polynomial::new(coeffs.iter().map(|s| q(s)).collect())
}

pub fn rf(num: &[&str], den: &[&str]) -> RationalFunction {
    RationalFunction::new(poly(num), poly(den))
}

pub const STUDY_A: [[&str; 5]; 5] = [
    ["-.7", ".2", "0", ".4", "0"],
    [".2", "-1.6", ".2", "0", ".6"],
    [".1", ".1", "-.3", "0", "0"],
    [".6", "0", "0", "-1.6", ".4"],
    ["0", ".4", "0", ".2", "-.7"],
];

pub const STUDY_B: [&str; 5] = ["-.1", ".4", "-.1", ".4", "-.1"];

/// The five-agent case-study model, fully exposed.
pub fn study_model() -> LinearModel {
    let a = STUDY_A
        .iter()
        .map(|row| row.iter().map(|s| q(s)).collect())
        .collect();
    let b = STUDY_B.iter().map(|s| q(s)).collect();
    LinearModel::new(a, b, None, None).unwrap()
}

/// Dense-sweep H-infinity oracle, independent of the bisection path:
/// max of |r(iw)| over w = 0 and a log grid.
pub fn sweep_norm(r: &RationalFunction, points: usize) -> (f64, f64) {
    use num_complex::Complex64;
    let mut best = r.eval_complex(Complex64::new(0.0, 0.0)).unwrap().norm();
    let mut best_w = 0.0;
    let (lo, hi) = (1e-4f64.ln(), 1e4f64.ln());
    for k in 0..points {
        let w = (lo + (hi - lo) * k as f64 / (points - 1) as f64).exp();
        let v = r.eval_complex(Complex64::new(0.0, w)).unwrap().norm();
        if v > best {
            best = v;
            best_w = w;
        }
    }
    (best, best_w)
}
