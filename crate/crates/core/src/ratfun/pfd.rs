//! Partial fraction decomposition.
//!
//! The polynomial part comes from exact long division; pole locations come
//! from the square-free root finder; residues are recovered from the local
//! Taylor expansion of the strictly proper remainder at each pole.

use super::func::RationalFunction;
use super::poly::Polynomial;
use super::roots;
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct PfdTerm {
    pub pole: Complex64,
    pub multiplicity: usize,
    /// `residues[k-1]` multiplies `1/(s - pole)^k` for `k = 1..=multiplicity`.
    pub residues: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct PartialFractionForm {
    pub polynomial_part: Polynomial,
    pub terms: Vec<PfdTerm>,
}

impl PartialFractionForm {
    /// Evaluate the recombined form at a point off the poles.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = self.polynomial_part.eval_complex(z);
        for term in &self.terms {
            let base = z - term.pole;
            let mut power = Complex64::new(1.0, 0.0);
            for r in &term.residues {
                power *= base;
                acc += r / power;
            }
        }
        acc
    }
}

/// Decompose a rational function into polynomial part plus pole terms.
pub fn partial_fractions(r: &RationalFunction) -> Result<PartialFractionForm> {
    let den = r.denominator();
    if den.degree().is_none_or(|d| d == 0) {
        return Err(Error::ConstantDenominator);
    }
    let (polynomial_part, rem) = r.split_polynomial_part();

    // Root pass organized by square-free factor so multiplicities are exact.
    let mut poles: Vec<(Complex64, usize)> = Vec::new();
    for (factor, mult) in den.square_free_factors() {
        let factor_roots = roots::complex_roots_f64(&factor.to_f64_coeffs())?;
        for (a, b) in pairs(&factor_roots) {
            let gap = (a - b).norm();
            if gap < roots::CLUSTER_TOL {
                return Err(Error::IllConditionedPoles { gap });
            }
        }
        for root in factor_roots {
            poles.push((root, mult));
        }
    }
    for ((a, _), (b, _)) in pairs(&poles) {
        let gap = (a - b).norm();
        if gap < roots::CLUSTER_TOL {
            return Err(Error::IllConditionedPoles { gap });
        }
    }

    let den_coeffs: Vec<Complex64> = den
        .to_f64_coeffs()
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect();
    let rem_coeffs: Vec<Complex64> = rem
        .to_f64_coeffs()
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect();

    let mut terms = Vec::with_capacity(poles.len());
    for &(pole, mult) in &poles {
        // Deflate the pole from the denominator, then match Taylor
        // coefficients of rem/deflated around the pole.
        let mut deflated = den_coeffs.clone();
        for _ in 0..mult {
            deflated = synthetic_divide(&deflated, pole);
        }
        let num_taylor = taylor_coeffs(&rem_coeffs, pole, mult);
        let den_taylor = taylor_coeffs(&deflated, pole, mult);
        let d0 = den_taylor[0];
        let mut quotient = vec![Complex64::new(0.0, 0.0); mult];
        for j in 0..mult {
            let mut acc = num_taylor[j];
            for k in 0..j {
                acc -= quotient[k] * den_taylor[j - k];
            }
            quotient[j] = acc / d0;
        }
        // Residue on 1/(s-p)^k is the Taylor coefficient of order mult-k.
        let residues: Vec<Complex64> = (1..=mult).map(|k| quotient[mult - k]).collect();
        terms.push(PfdTerm {
            pole,
            multiplicity: mult,
            residues,
        });
    }

    enforce_conjugate_symmetry(&mut terms);
    terms.sort_by(|a, b| {
        (a.pole.re, a.pole.im)
            .partial_cmp(&(b.pole.re, b.pole.im))
            .unwrap()
    });
    Ok(PartialFractionForm {
        polynomial_part,
        terms,
    })
}

fn pairs<T>(items: &[T]) -> impl Iterator<Item = (&T, &T)> {
    items
        .iter()
        .enumerate()
        .flat_map(move |(i, a)| items[i + 1..].iter().map(move |b| (a, b)))
}

/// Divide by `(s - p)`, discarding the remainder (valid when `p` is a root).
fn synthetic_divide(coeffs: &[Complex64], p: Complex64) -> Vec<Complex64> {
    let n = coeffs.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n - 1];
    let mut carry = Complex64::new(0.0, 0.0);
    for k in (0..n - 1).rev() {
        carry = coeffs[k + 1] + carry * p;
        out[k] = carry;
    }
    out
}

/// First `count` Taylor coefficients of a polynomial about `p`, by repeated
/// synthetic division (remainders are the shifted coefficients).
fn taylor_coeffs(coeffs: &[Complex64], p: Complex64, count: usize) -> Vec<Complex64> {
    let mut work = coeffs.to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if work.is_empty() {
            out.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let n = work.len();
        let mut quot = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut acc = work[n - 1];
        for k in (0..n - 1).rev() {
            quot[k] = acc;
            acc = work[k] + acc * p;
        }
        out.push(acc);
        work = quot;
    }
    out
}

/// Real inputs must yield conjugate pole pairs with conjugate residues;
/// average each pair to scrub asymmetric rounding noise.
fn enforce_conjugate_symmetry(terms: &mut [PfdTerm]) {
    let n = terms.len();
    for i in 0..n {
        if terms[i].pole.im <= 0.0 {
            continue;
        }
        for j in 0..n {
            if i == j || terms[j].pole.im >= 0.0 {
                continue;
            }
            if (terms[i].pole - terms[j].pole.conj()).norm() < roots::CLUSTER_TOL
                && terms[i].multiplicity == terms[j].multiplicity
            {
                let pole = (terms[i].pole + terms[j].pole.conj()) * 0.5;
                terms[i].pole = pole;
                terms[j].pole = pole.conj();
                for k in 0..terms[i].multiplicity {
                    let avg = (terms[i].residues[k] + terms[j].residues[k].conj()) * 0.5;
                    terms[i].residues[k] = avg;
                    terms[j].residues[k] = avg.conj();
                }
                break;
            }
        }
    }
}
