//! Time-domain realization of a perturbed DSF.
//!
//! The perturbation enters row `j` of the dynamics through
//! `d(s) = (s - D_jj) Delta_{j,i}(s)`. Partial fractions split `d` into a
//! linear polynomial part `alpha s + beta` plus powers of `1/(s + a)`; the
//! `alpha s` term is removed by substituting the driving state's own
//! derivative, and each `1/(s + a)^k` becomes a convolution state chained
//! as `p1' = x_i - a p1`, `pk' = p_{k-1} - a pk`.

use crate::dsf::DsfPair;
use crate::error::{Error, Result};
use crate::hinf::{self, StabilityVerdict};
use crate::netmodel::LinearModel;
use crate::perturb::LinkPerturbation;
use crate::ratfun::{self, partial_fractions, Polynomial, RationalFunction};
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct AugmentedRealization {
    pub a_tilde: Vec<Vec<f64>>,
    pub b_tilde: Vec<f64>,
    pub labels: Vec<String>,
    pub aux_count: usize,
    pub perturbation: LinkPerturbation,
}

/// Realize the perturbed system in the time domain. Requires full exposure:
/// with hidden states `D_jj(s)` is a genuine rational function and the row
/// substitution below no longer closes at first order.
pub fn unwind(
    model: &LinearModel,
    dsf: &DsfPair,
    pert: &LinkPerturbation,
) -> Result<AugmentedRealization> {
    if !model.is_fully_exposed() {
        return Err(Error::HiddenStatesUnsupported);
    }
    let n = model.dim();
    let i = pert.source_state;
    let j = pert.target_state;
    let a = model.a_f64();
    let b = model.b_f64();

    // d(s) = (s - D_jj) * Delta. Full exposure makes D_jj the constant a_jj.
    let j_pos = pert.target_pos;
    let s_minus_d = &RationalFunction::from_polynomial(Polynomial::variable())
        - dsf.d.get(j_pos, j_pos);
    let d_fun = &s_minus_d * &pert.entry;

    let (alpha, beta, conv_gains, conv_pole) = if d_fun.denominator().degree() == Some(0) {
        // Constant (order-0) perturbations leave d polynomial.
        let part = d_fun.numerator();
        if part.degree().is_some_and(|deg| deg > 1) {
            return Err(Error::InvalidModel(
                "perturbation leaves a polynomial part of degree > 1".into(),
            ));
        }
        (
            ratfun::to_f64(&part.coeff(1)),
            ratfun::to_f64(&part.coeff(0)),
            vec![],
            0.0,
        )
    } else {
        let form = partial_fractions(&d_fun)?;
        if form.polynomial_part.degree().is_some_and(|deg| deg > 1) {
            return Err(Error::InvalidModel(
                "perturbation leaves a polynomial part of degree > 1".into(),
            ));
        }
        if form.terms.len() != 1 {
            return Err(Error::InvalidModel(format!(
                "expected a single repeated pole from the all-pass, found {}",
                form.terms.len()
            )));
        }
        let term = &form.terms[0];
        let gains: Vec<f64> = term.residues.iter().map(|c| c.re).collect();
        (
            ratfun::to_f64(&form.polynomial_part.coeff(1)),
            ratfun::to_f64(&form.polynomial_part.coeff(0)),
            gains,
            -term.pole.re,
        )
    };
    let r = conv_gains.len();

    let dim = n + r;
    let mut a_tilde = vec![vec![0.0; dim]; dim];
    let mut b_tilde = vec![0.0; dim];
    for row in 0..n {
        a_tilde[row][..n].clone_from_slice(&a[row]);
        b_tilde[row] = b[row];
    }

    if i == j {
        // alpha * xj' appears on both sides; solve implicitly.
        let scale = 1.0 - alpha;
        if scale.abs() < 1e-9 {
            return Err(Error::SingularImplicitSolve {
                value: scale.abs(),
            });
        }
        a_tilde[j][j] += beta;
        for entry in &mut a_tilde[j][..n] {
            *entry /= scale;
        }
        for (k, &c) in conv_gains.iter().enumerate() {
            a_tilde[j][n + k] = c / scale;
        }
        b_tilde[j] /= scale;
    } else {
        for col in 0..n {
            a_tilde[j][col] += alpha * a[i][col];
        }
        a_tilde[j][i] += beta;
        for (k, &c) in conv_gains.iter().enumerate() {
            a_tilde[j][n + k] = c;
        }
        b_tilde[j] += alpha * b[i];
    }

    // Convolution chain driven by x_i.
    for k in 0..r {
        let row = n + k;
        if k == 0 {
            a_tilde[row][i] = 1.0;
        } else {
            a_tilde[row][row - 1] = 1.0;
        }
        a_tilde[row][row] = -conv_pole;
    }

    let mut labels = model.labels().to_vec();
    for k in 0..r {
        labels.push(match k {
            0 => "p".to_string(),
            1 => "q".to_string(),
            _ => format!("aux{}", k + 1),
        });
    }

    Ok(AugmentedRealization {
        a_tilde,
        b_tilde,
        labels,
        aux_count: r,
        perturbation: pert.clone(),
    })
}

#[derive(Debug, Clone)]
pub struct InstabilityReport {
    pub spectrum: Vec<Complex64>,
    /// Eigenvalue with the largest real part.
    pub leading_eigenvalue: Complex64,
    pub verdict: StabilityVerdict,
}

pub fn verify_instability(aug: &AugmentedRealization) -> InstabilityReport {
    let spectrum = hinf::spectrum_f64(&aug.a_tilde);
    let leading = spectrum
        .iter()
        .copied()
        .max_by(|a, b| a.re.partial_cmp(&b.re).unwrap())
        .expect("nonempty spectrum");
    let verdict = hinf::verdict_from_spectrum(&spectrum, &aug.a_tilde);
    InstabilityReport {
        spectrum,
        leading_eigenvalue: leading,
        verdict,
    }
}
