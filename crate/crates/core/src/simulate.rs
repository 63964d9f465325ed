//! Fixed-step integration of linear systems and equilibrium computation.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub labels: Vec<String>,
    /// Set when integration hit nonfinite values and was truncated.
    pub truncated_at: Option<f64>,
}

impl Trajectory {
    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory is never empty")
    }

    /// State at the sample closest to `t`.
    pub fn state_near(&self, t: f64) -> &[f64] {
        let idx = self
            .times
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                (*a - t).abs().partial_cmp(&(*b - t).abs()).unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        &self.states[idx]
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Classical 4th-order fixed-step integration of `x' = A x + b`.
///
/// On overflow the trajectory is truncated at the last finite sample and
/// flagged rather than failing.
pub fn simulate(
    a: &[Vec<f64>],
    b: &[f64],
    x0: &[f64],
    t_final: f64,
    dt: f64,
    labels: Vec<String>,
) -> Result<Trajectory> {
    let n = a.len();
    if b.len() != n || x0.len() != n || labels.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "A is {n}x{n}, b has {}, x0 has {}, labels has {}",
            b.len(),
            x0.len(),
            labels.len()
        )));
    }
    // NaN dt must not slip through either comparison.
    if !dt.is_finite() || dt <= 0.0 || t_final < dt {
        return Err(Error::DimensionMismatch(
            "require dt > 0 and t_final >= dt".into(),
        ));
    }
    let deriv = |x: &[f64], out: &mut [f64]| {
        for i in 0..n {
            let mut acc = b[i];
            for j in 0..n {
                acc += a[i][j] * x[j];
            }
            out[i] = acc;
        }
    };
    let steps = (t_final / dt).round() as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = x0.to_vec();
    times.push(0.0);
    states.push(x.clone());
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];
    let mut truncated_at = None;
    for step in 1..=steps {
        deriv(&x, &mut k1);
        for i in 0..n {
            tmp[i] = x[i] + 0.5 * dt * k1[i];
        }
        deriv(&tmp, &mut k2);
        for i in 0..n {
            tmp[i] = x[i] + 0.5 * dt * k2[i];
        }
        deriv(&tmp, &mut k3);
        for i in 0..n {
            tmp[i] = x[i] + dt * k3[i];
        }
        deriv(&tmp, &mut k4);
        for i in 0..n {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t = step as f64 * dt;
        if x.iter().any(|v| !v.is_finite()) {
            truncated_at = Some(t);
            break;
        }
        times.push(t);
        states.push(x.clone());
    }
    Ok(Trajectory {
        times,
        states,
        labels,
        truncated_at,
    })
}

/// Equilibrium `x*` solving `A x* = -b` (nonsingular `A`).
pub fn equilibrium(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "A is {n}x{n} but b has length {}",
            b.len()
        )));
    }
    let mat = DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let rhs = DVector::from_fn(n, |i, _| -b[i]);
    let solution = mat
        .clone()
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::SingularMatrix {
            witness: "state matrix is singular; no unique equilibrium".into(),
        })?;
    // Residual check per the contract.
    let residual = (&mat * &solution + DVector::from_fn(n, |i, _| b[i])).norm();
    let bound = 1e-10 * (mat.norm() * solution.norm() + rhs.norm() + 1.0);
    if residual > bound {
        return Err(Error::SingularMatrix {
            witness: format!("equilibrium residual {residual:.3e} exceeds {bound:.3e}"),
        });
    }
    Ok(solution.iter().copied().collect())
}
