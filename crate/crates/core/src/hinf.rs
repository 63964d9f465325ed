//! Stability classification and H-infinity norms of scalar rational
//! functions.
//!
//! The norm is computed by level-set bisection: "does |r(i w)| reach gamma
//! somewhere?" is decided exactly through the real nonnegative roots of the
//! level-crossing polynomial in u = w^2, seeded by a dense logarithmic
//! frequency sweep. The final value and maximizer are polished through the
//! critical points of |r(i w)|^2, which are again polynomial roots.

use crate::error::{Error, Result};
use crate::ratfun::{complex_roots_f64, poly_roots, Polynomial, RationalFunction};
use nalgebra::DMatrix;
use num::rational::BigRational;
use num::Zero;
use num_complex::Complex64;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    Marginal,
    Unstable,
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityVerdict::Stable => write!(f, "asymptotically stable"),
            StabilityVerdict::Marginal => write!(f, "not asymptotically stable (marginal)"),
            StabilityVerdict::Unstable => write!(f, "unstable"),
        }
    }
}

/// Eigenvalues of a real square matrix, sorted by (re, im).
pub fn spectrum_f64(m: &[Vec<f64>]) -> Vec<Complex64> {
    let n = m.len();
    let mat = DMatrix::from_fn(n, n, |i, j| m[i][j]);
    let mut eigs: Vec<Complex64> = mat
        .complex_eigenvalues()
        .iter()
        .map(|e| Complex64::new(e.re, e.im))
        .collect();
    for e in eigs.iter_mut() {
        if e.im.abs() <= 1e-9 * (1.0 + e.norm()) {
            e.im = 0.0;
        }
    }
    eigs.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    eigs
}

/// Classify stability from a spectrum with a norm-scaled tolerance.
pub fn verdict_from_spectrum(spectrum: &[Complex64], m: &[Vec<f64>]) -> StabilityVerdict {
    let norm: f64 = m
        .iter()
        .flat_map(|row| row.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt();
    let tol = 1e-9 * (1.0 + norm);
    let max_re = spectrum.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    if max_re < -tol {
        StabilityVerdict::Stable
    } else if max_re > tol {
        StabilityVerdict::Unstable
    } else {
        StabilityVerdict::Marginal
    }
}

pub fn is_asymptotically_stable(m: &[Vec<f64>]) -> StabilityVerdict {
    verdict_from_spectrum(&spectrum_f64(m), m)
}

/// Where the supremum of |r(i w)| is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WorstFrequency {
    Finite(f64),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormResult {
    pub value: f64,
    pub worst_frequency: WorstFrequency,
    /// True when the level-set bisection converged and agrees with the
    /// polished value.
    pub certified: bool,
}

/// Sweep grid bounds and density; the case-study maximizers sit at w = 0,
/// which is always included as an explicit grid point.
const SWEEP_LO: f64 = 1e-4;
const SWEEP_HI: f64 = 1e4;
const SWEEP_POINTS: usize = 2000;

/// |p(i w)|^2 as an exact polynomial in u = w^2.
fn magnitude_squared_poly(p: &Polynomial) -> Polynomial {
    let mut real = Vec::new();
    let mut imag = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
        let signed = c * BigRational::from_integer(sign.into());
        if k % 2 == 0 {
            while real.len() < k {
                real.push(BigRational::zero());
            }
            real.push(signed);
        } else {
            while imag.len() < k {
                imag.push(BigRational::zero());
            }
            imag.push(signed);
        }
    }
    let real = Polynomial::new(real);
    let imag = Polynomial::new(imag);
    let sq = &(&real * &real) + &(&imag * &imag);
    // Only even powers survive; reindex by u = w^2.
    let coeffs: Vec<BigRational> = sq
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(k, _)| k % 2 == 0)
        .map(|(_, c)| c.clone())
        .collect();
    Polynomial::new(coeffs)
}

fn eval_poly_f64(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Real nonnegative roots of an f64-coefficient polynomial in u.
fn nonneg_real_roots(coeffs: &[f64]) -> Result<Vec<f64>> {
    let scale = coeffs.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    if scale == 0.0 {
        return Ok(vec![]);
    }
    let roots = complex_roots_f64(coeffs)?;
    Ok(roots
        .into_iter()
        .filter(|z| z.im.abs() <= 1e-7 * (1.0 + z.norm()) && z.re >= -1e-9 * (1.0 + z.norm()))
        .map(|z| z.re.max(0.0))
        .collect())
}

/// H-infinity norm of a stable proper rational function, with the
/// maximizing frequency.
pub fn hinf_norm(r: &RationalFunction) -> Result<NormResult> {
    if r.is_zero() {
        return Ok(NormResult {
            value: 0.0,
            worst_frequency: WorstFrequency::Finite(0.0),
            certified: true,
        });
    }
    if !r.is_proper() {
        return Err(Error::NormUndefined {
            reason: "improper transfer function (unbounded at infinity)".into(),
        });
    }
    for root in poly_roots(r.denominator())? {
        if root.value.re >= -1e-12 {
            return Err(Error::NormUndefined {
                reason: format!(
                    "pole at {:.6}{:+.6}i is not in the open left half-plane",
                    root.value.re, root.value.im
                ),
            });
        }
    }

    let mn = magnitude_squared_poly(r.numerator()).to_f64_coeffs();
    let md = magnitude_squared_poly(r.denominator()).to_f64_coeffs();
    let gain_sq = |u: f64| eval_poly_f64(&mn, u) / eval_poly_f64(&md, u);

    // Limit as w -> infinity: nonzero only for biproper functions.
    let limit = if r.numerator().degree() == r.denominator().degree() {
        let g = crate::ratfun::to_f64(r.numerator().leading_coeff().unwrap());
        g.abs()
    } else {
        0.0
    };

    // Dense logarithmic sweep (plus the w = 0 endpoint) for the initial
    // lower bound and maximizer seed.
    let mut best_u = 0.0f64;
    let mut best = gain_sq(0.0);
    let log_lo = SWEEP_LO.ln();
    let log_hi = SWEEP_HI.ln();
    for k in 0..SWEEP_POINTS {
        let w = (log_lo + (log_hi - log_lo) * k as f64 / (SWEEP_POINTS - 1) as f64).exp();
        let u = w * w;
        let g = gain_sq(u);
        if g > best {
            best = g;
            best_u = u;
        }
    }

    // Level-set bisection on gamma. Crossing test: does
    // mn(u) - gamma^2 md(u) have a real nonnegative root?
    let crosses = |gamma: f64| -> Result<bool> {
        let g2 = gamma * gamma;
        let n = mn.len().max(md.len());
        let phi: Vec<f64> = (0..n)
            .map(|k| mn.get(k).copied().unwrap_or(0.0) - g2 * md.get(k).copied().unwrap_or(0.0))
            .collect();
        if eval_poly_f64(&phi, 0.0) >= 0.0 {
            return Ok(true);
        }
        Ok(nonneg_real_roots(&phi)?
            .iter()
            .any(|&u| u.is_finite()))
    };
    let mut lo = best.sqrt().max(limit);
    let mut hi = (lo * 2.0).max(1e-300);
    let mut escalations = 0;
    while crosses(hi)? {
        lo = hi;
        hi *= 2.0;
        escalations += 1;
        if escalations > 200 {
            return Err(Error::NormUndefined {
                reason: "level-set bisection failed to bracket the norm".into(),
            });
        }
    }
    for _ in 0..200 {
        if hi - lo <= 1e-10 * lo {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if crosses(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let bisected = lo;

    // Polish through critical points of mn/md: roots of mn' md - mn md'.
    let mn_exact = magnitude_squared_poly(r.numerator());
    let md_exact = magnitude_squared_poly(r.denominator());
    let critical = &(&mn_exact.derivative() * &md_exact) - &(&mn_exact * &md_exact.derivative());
    let mut peak = gain_sq(0.0);
    let mut peak_u = 0.0f64;
    if !critical.is_zero() {
        for u in nonneg_real_roots(&critical.to_f64_coeffs())? {
            let g = gain_sq(u);
            if g > peak {
                peak = g;
                peak_u = u;
            }
        }
    }
    if best > peak {
        peak = best;
        peak_u = best_u;
    }
    let finite_value = peak.sqrt();

    let (value, worst_frequency) = if limit > finite_value * (1.0 + 1e-12) {
        (limit, WorstFrequency::Infinity)
    } else {
        (finite_value, WorstFrequency::Finite(peak_u.sqrt()))
    };
    let certified = (bisected - value).abs() <= 1e-8 * value.max(1e-300);
    Ok(NormResult {
        value,
        worst_frequency,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn rf(num: &[&str], den: &[&str]) -> RationalFunction {
        RationalFunction::new(
            Polynomial::new(num.iter().map(|s| q(s)).collect()),
            Polynomial::new(den.iter().map(|s| q(s)).collect()),
        )
    }

    #[test]
    fn first_order_low_pass() {
        // c/(s+a) peaks at w = 0 with value c/a.
        let r = rf(&["3"], &["2", "1"]);
        let res = hinf_norm(&r).unwrap();
        assert!((res.value - 1.5).abs() < 1e-9);
        assert_eq!(res.worst_frequency, WorstFrequency::Finite(0.0));
        assert!(res.certified);
    }

    #[test]
    fn all_pass_is_unit_norm() {
        for a in ["0.5", "1", "2"] {
            for k in 1..=3u32 {
                let ap = rf(&[a, "-1"], &[a, "1"]).pow(k);
                let res = hinf_norm(&ap).unwrap();
                assert!(
                    (res.value - 1.0).abs() < 1e-9,
                    "allpass a={a} k={k}: {}",
                    res.value
                );
            }
        }
    }

    #[test]
    fn resonant_peak_at_interior_frequency() {
        // 1/(s^2 + 0.2 s + 1): peak near w = sqrt(1 - 0.02).
        let r = rf(&["1"], &["1", "0.2", "1"]);
        let res = hinf_norm(&r).unwrap();
        let expected_u: f64 = 1.0 - 0.02;
        match res.worst_frequency {
            WorstFrequency::Finite(w) => {
                assert!((w - expected_u.sqrt()).abs() < 1e-8, "w* = {w}")
            }
            WorstFrequency::Infinity => panic!("expected finite maximizer"),
        }
        let peak = 1.0 / (0.2 * expected_u.sqrt() * (1.0 - expected_u / 4.0 * 0.04).sqrt());
        // Analytic peak magnitude for a 2nd-order resonance: 1/(d*sqrt(1-d^2/4)), d=0.2.
        let d: f64 = 0.2;
        let analytic = 1.0 / (d * (1.0 - d * d / 4.0).sqrt());
        assert!((res.value - analytic).abs() < 1e-9 * analytic, "{peak}");
    }

    #[test]
    fn scale_equivariance() {
        let r = rf(&["1", "1"], &["2", "3", "1"]);
        let base = hinf_norm(&r).unwrap().value;
        let scaled = hinf_norm(&r.scale(&q("-7"))).unwrap().value;
        assert!((scaled - 7.0 * base).abs() < 1e-9 * scaled);
    }

    #[test]
    fn unstable_input_rejected() {
        let r = rf(&["1"], &["-1", "1"]); // pole at +1
        assert!(matches!(hinf_norm(&r), Err(Error::NormUndefined { .. })));
    }

    #[test]
    fn improper_input_rejected() {
        let r = rf(&["0", "0", "1"], &["1", "1"]); // s^2/(s+1)
        assert!(matches!(hinf_norm(&r), Err(Error::NormUndefined { .. })));
    }

    #[test]
    fn supremum_only_at_infinity() {
        // (s+2)/(s+1) grows monotonically to 1 from g(0)=2... actually
        // |(iw+2)/(iw+1)| decreases from 2 to 1, so the max is at 0.
        // s/(s+1) instead increases monotonically to 1 with no finite max.
        let r = rf(&["0", "1"], &["1", "1"]);
        let res = hinf_norm(&r).unwrap();
        assert_eq!(res.worst_frequency, WorstFrequency::Infinity);
        assert!((res.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn spectrum_of_diagonal() {
        let eigs = spectrum_f64(&[vec![-1.0, 0.0], vec![0.0, -2.0]]);
        assert!((eigs[0] - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        assert!((eigs[1] - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rotation_is_marginal() {
        let verdict = is_asymptotically_stable(&[vec![0.0, 1.0], vec![-1.0, 0.0]]);
        assert_eq!(verdict, StabilityVerdict::Marginal);
        assert_eq!(
            is_asymptotically_stable(&[vec![1.0]]),
            StabilityVerdict::Unstable
        );
    }
}
