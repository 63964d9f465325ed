//! Link vulnerability ranking and minimal-norm destabilizing perturbations.
//!
//! The vulnerability of the link from state `i` to state `j` is
//! `V = ||H_ij||_inf`; the smallest single-link perturbation that removes
//! asymptotic stability has norm `1/V` and sits at entry `(j, i)` of the
//! perturbation matrix. The synthesized entry is an all-pass of gain `1/V`
//! phase-matched at the worst frequency, inflated by `(1 + epsilon)`.

use crate::error::{Error, Result};
use crate::hinf::{self, hinf_norm, StabilityVerdict, WorstFrequency};
use crate::netmodel::LinearModel;
use crate::ratfun::{Polynomial, RationalFunction, TransferMatrix};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbMode {
    /// Only links already present in the influence graph, self-links excluded.
    Existing,
    /// Every ordered pair of exposed states, self-links included.
    Created,
}

/// A ranked link: state `i` influencing state `j`.
#[derive(Debug, Clone)]
pub struct LinkCandidate {
    /// Row/column positions in `H` (exposed ordering).
    pub source_pos: usize,
    pub target_pos: usize,
    /// Original state indices (for A lookups and labels).
    pub source_state: usize,
    pub target_state: usize,
    pub existing: bool,
    pub vulnerability: f64,
    pub worst_frequency: WorstFrequency,
}

/// A single-link rational perturbation `Delta_{j,i}(s)`.
#[derive(Debug, Clone)]
pub struct LinkPerturbation {
    pub source_pos: usize,
    pub target_pos: usize,
    pub source_state: usize,
    pub target_state: usize,
    /// `(1+eps) * sign * gain * ((a-s)/(a+s))^order`, canonical form.
    pub entry: RationalFunction,
    pub gain: BigRational,
    pub allpass_pole: BigRational,
    pub allpass_order: u32,
    pub sign: i8,
    pub epsilon: BigRational,
}

impl LinkPerturbation {
    /// The full perturbation matrix (single nonzero entry at `(j, i)`).
    pub fn matrix(&self, dim: usize) -> TransferMatrix {
        let mut m = TransferMatrix::zeros(dim, dim);
        m.set(self.target_pos, self.source_pos, self.entry.clone());
        m
    }

    /// The same entry with a different inflation factor.
    pub fn with_epsilon(&self, epsilon: BigRational) -> LinkPerturbation {
        let old_scale = BigRational::one() + &self.epsilon;
        let new_scale = BigRational::one() + &epsilon;
        let entry = self.entry.scale(&(new_scale / old_scale));
        LinkPerturbation {
            entry,
            epsilon,
            ..self.clone()
        }
    }
}

/// Rank every admissible link by vulnerability, descending; ties break on
/// (source, target) lexicographic order.
pub fn vulnerability_map(
    h: &TransferMatrix,
    model: &LinearModel,
    mode: PerturbMode,
) -> Result<Vec<LinkCandidate>> {
    let verdict = hinf::is_asymptotically_stable(&model.a_f64());
    if verdict != StabilityVerdict::Stable {
        return Err(Error::UnstableModel {
            verdict: verdict.to_string(),
        });
    }
    let p = h.rows();
    let exposed = model.exposed();
    assert_eq!(p, exposed.len(), "H dimension must match exposed set");
    let mut candidates = Vec::new();
    for i_pos in 0..p {
        for j_pos in 0..p {
            let i_state = exposed[i_pos];
            let j_state = exposed[j_pos];
            let existing = i_state != j_state && !model.a()[j_state][i_state].is_zero();
            match mode {
                PerturbMode::Existing if !existing => continue,
                _ => {}
            }
            let norm = hinf_norm(h.get(i_pos, j_pos))?;
            candidates.push(LinkCandidate {
                source_pos: i_pos,
                target_pos: j_pos,
                source_state: i_state,
                target_state: j_state,
                existing,
                vulnerability: norm.value,
                worst_frequency: norm.worst_frequency,
            });
        }
    }
    candidates.sort_by(|a, b| {
        b.vulnerability
            .partial_cmp(&a.vulnerability)
            .unwrap()
            .then((a.source_pos, a.target_pos).cmp(&(b.source_pos, b.target_pos)))
    });
    Ok(candidates)
}

/// `((a - s)/(a + s))^order` for rational `a > 0`.
fn all_pass(a: &BigRational, order: u32) -> RationalFunction {
    RationalFunction::new(
        Polynomial::new(vec![a.clone(), -BigRational::one()]),
        Polynomial::linear(a.clone()),
    )
    .pow(order)
}

/// Synthesize the minimal-norm destabilizing entry for a candidate link.
///
/// At the worst frequency the closed loop gain hits one exactly:
/// `Delta(i w*) H_ij(i w*) = 1`. When `w* = 0` the gain and sign come from
/// exact evaluation of `H_ij(0)`, so the entry is an exact rational
/// multiple of the all-pass template. For an interior `w*` the all-pass
/// pole is solved from the phase equation instead and `a` is overridden.
pub fn synthesize_delta(
    candidate: &LinkCandidate,
    h_ij: &RationalFunction,
    epsilon: BigRational,
    allpass_pole: BigRational,
    allpass_order: u32,
) -> Result<LinkPerturbation> {
    if epsilon.is_negative() {
        return Err(Error::SynthesisInfeasible {
            reason: "epsilon must be nonnegative".into(),
        });
    }
    if !allpass_pole.is_positive() {
        return Err(Error::SynthesisInfeasible {
            reason: "all-pass pole must be positive".into(),
        });
    }
    let omega = match candidate.worst_frequency {
        WorstFrequency::Infinity => {
            return Err(Error::SynthesisInfeasible {
                reason: "worst frequency at infinity: no finite-frequency minimal perturbation"
                    .into(),
            })
        }
        WorstFrequency::Finite(w) => w,
    };
    let inflation = BigRational::one() + &epsilon;

    if omega == 0.0 {
        // Exact route: V = |H_ij(0)| as a rational number.
        let h0 = h_ij.eval_rational(&BigRational::zero())?;
        if h0.is_zero() {
            return Err(Error::SynthesisInfeasible {
                reason: "H_ij(0) = 0 at the reported worst frequency".into(),
            });
        }
        let sign: i8 = if h0.is_negative() { -1 } else { 1 };
        let gain = h0.abs().recip();
        let scale = &(&inflation * &gain) * &BigRational::from_integer(sign.into());
        let entry = all_pass(&allpass_pole, allpass_order).scale(&scale);
        return Ok(LinkPerturbation {
            source_pos: candidate.source_pos,
            target_pos: candidate.target_pos,
            source_state: candidate.source_state,
            target_state: candidate.target_state,
            entry,
            gain,
            allpass_pole,
            allpass_order,
            sign,
            epsilon,
        });
    }

    // Interior worst frequency: order-2 all-pass, pole from the phase
    // equation -4 atan(w/a) = -theta (mod 2pi), sign flip covering the
    // other half turn.
    let order = 2u32;
    let h_at = h_ij.eval_complex(Complex64::new(0.0, omega))?;
    let theta = h_at.arg();
    let tau = std::f64::consts::TAU;
    let mut chosen: Option<(i8, f64)> = None;
    for sign in [1i8, -1i8] {
        let mut needed = theta;
        if sign < 0 {
            needed -= std::f64::consts::PI;
        }
        needed = needed.rem_euclid(tau);
        if needed > 1e-12 && needed < tau - 1e-12 {
            let a = omega / (needed / 4.0).tan();
            if a.is_finite() && a > 0.0 {
                chosen = Some((sign, a));
                break;
            }
        }
    }
    let (sign, a) = chosen.ok_or_else(|| Error::SynthesisInfeasible {
        reason: format!("phase equation infeasible for theta = {theta:.6}"),
    })?;
    let gain = BigRational::from_float(1.0 / candidate.vulnerability).ok_or_else(|| {
        Error::SynthesisInfeasible {
            reason: "vulnerability is zero or nonfinite".into(),
        }
    })?;
    let pole = BigRational::from_float(a).unwrap();
    let scale = &(&inflation * &gain) * &BigRational::from_integer(sign.into());
    let entry = all_pass(&pole, order).scale(&scale);
    Ok(LinkPerturbation {
        source_pos: candidate.source_pos,
        target_pos: candidate.target_pos,
        source_state: candidate.source_state,
        target_state: candidate.target_state,
        entry,
        gain,
        allpass_pole: pole,
        allpass_order: order,
        sign,
        epsilon,
    })
}

/// Closed-loop transfer function `(I - H Delta)^-1 G`, exact. The scalar
/// loop-gain identity `det(I - H Delta) = 1 - Delta_{j,i} H_ij` is checked
/// against the generic determinant.
pub fn perturbed_transfer(
    g: &TransferMatrix,
    h: &TransferMatrix,
    pert: &LinkPerturbation,
) -> Result<TransferMatrix> {
    let n = h.rows();
    let delta = pert.matrix(n);
    let closed = TransferMatrix::identity(n).sub(&h.mul(&delta));
    let det = closed.determinant();
    let loop_gain = &RationalFunction::one()
        - &(&pert.entry * h.get(pert.source_pos, pert.target_pos));
    assert_eq!(
        det, loop_gain,
        "single-link determinant identity violated"
    );
    if det.is_zero() {
        return Err(Error::SingularMatrix {
            witness: "det(I - H Delta) is identically zero".into(),
        });
    }
    Ok(closed.inverse()?.mul(g))
}
