//! Dynamical structure function computation.
//!
//! For a partitioned model the DSF is the unique pair `(Q, P)` with
//! `Qtilde = A11 + A12 (sI - A22)^-1 A21`,
//! `Ptilde = B1 + A12 (sI - A22)^-1 B2`, `D = diag(Qtilde)`, and
//! `Q = (sI - D)^-1 (Qtilde - D)`, `P = (sI - D)^-1 Ptilde`. All algebra
//! is exact, so the structural zeros of `Q` are exact zeros.

use crate::error::Result;
use crate::netmodel::LinearModel;
use crate::ratfun::{Polynomial, RationalFunction, TransferMatrix};
use num::rational::BigRational;
use num::{One, Zero};

/// A model reordered so exposed states come first, split into blocks.
#[derive(Debug, Clone)]
pub struct PartitionedModel {
    pub a11: Vec<Vec<BigRational>>,
    pub a12: Vec<Vec<BigRational>>,
    pub a21: Vec<Vec<BigRational>>,
    pub a22: Vec<Vec<BigRational>>,
    pub b1: Vec<Vec<BigRational>>,
    pub b2: Vec<Vec<BigRational>>,
    pub exposed_labels: Vec<String>,
    pub hidden_labels: Vec<String>,
    /// Original state indices in the reordered (exposed-first) order.
    pub permutation: Vec<usize>,
}

impl PartitionedModel {
    pub fn exposed_count(&self) -> usize {
        self.a11.len()
    }

    pub fn hidden_count(&self) -> usize {
        self.a22.len()
    }

    pub fn input_count(&self) -> usize {
        self.b1.first().map_or(0, |row| row.len())
    }
}

/// The DSF plus the subtracted diagonal `D(s)`.
#[derive(Debug, Clone)]
pub struct DsfPair {
    pub q: TransferMatrix,
    pub p: TransferMatrix,
    pub d: TransferMatrix,
    pub exposed_labels: Vec<String>,
}

/// Reorder states exposed-first and extract the four blocks. The input
/// matrix is the identity (each state carries its own constant drive), so
/// `B1`/`B2` are the matching row slices of `I`.
pub fn partition(model: &LinearModel) -> Result<PartitionedModel> {
    let n = model.dim();
    let exposed = model.exposed().to_vec();
    let hidden: Vec<usize> = (0..n).filter(|i| !exposed.contains(i)).collect();
    let order: Vec<usize> = exposed.iter().chain(hidden.iter()).copied().collect();
    let a = model.a();
    let block = |rows: &[usize], cols: &[usize]| -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect())
            .collect()
    };
    let unit_rows = |rows: &[usize]| -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|&i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    Ok(PartitionedModel {
        a11: block(&exposed, &exposed),
        a12: block(&exposed, &hidden),
        a21: block(&hidden, &exposed),
        a22: block(&hidden, &hidden),
        b1: unit_rows(&exposed),
        b2: unit_rows(&hidden),
        exposed_labels: exposed
            .iter()
            .map(|&i| model.labels()[i].clone())
            .collect(),
        hidden_labels: hidden.iter().map(|&i| model.labels()[i].clone()).collect(),
        permutation: order,
    })
}

fn constant_matrix(m: &[Vec<BigRational>], cols: usize) -> TransferMatrix {
    TransferMatrix::from_fn(m.len(), cols, |i, j| {
        RationalFunction::constant(m[i][j].clone())
    })
}

/// Compute the exact DSF of a partitioned model.
pub fn compute_dsf(pm: &PartitionedModel) -> Result<DsfPair> {
    let p_dim = pm.exposed_count();
    let h_dim = pm.hidden_count();
    let m_dim = pm.input_count();

    let (q_tilde, p_tilde) = if h_dim == 0 {
        (
            constant_matrix(&pm.a11, p_dim),
            constant_matrix(&pm.b1, m_dim),
        )
    } else {
        let resolvent = TransferMatrix::s_identity_minus(&pm.a22).inverse()?;
        let a12 = constant_matrix(&pm.a12, h_dim);
        let core = a12.mul(&resolvent);
        let q_tilde = constant_matrix(&pm.a11, p_dim).add(&core.mul(&constant_matrix(&pm.a21, p_dim)));
        let p_tilde = constant_matrix(&pm.b1, m_dim).add(&core.mul(&constant_matrix(&pm.b2, m_dim)));
        (q_tilde, p_tilde)
    };

    let s = RationalFunction::from_polynomial(Polynomial::variable());
    // (sI - D) is diagonal; invert entrywise.
    let mut s_minus_d_inv = TransferMatrix::zeros(p_dim, p_dim);
    let mut d = TransferMatrix::zeros(p_dim, p_dim);
    for i in 0..p_dim {
        let dii = q_tilde.get(i, i).clone();
        let diff = &s - &dii;
        s_minus_d_inv.set(i, i, diff.recip()?);
        d.set(i, i, dii);
    }
    let q = s_minus_d_inv.mul(&q_tilde.sub(&d));
    let p = s_minus_d_inv.mul(&p_tilde);
    Ok(DsfPair {
        q,
        p,
        d,
        exposed_labels: pm.exposed_labels.clone(),
    })
}

/// `H = (I - Q)^-1`: the link-to-link sensitivity matrix.
pub fn h_matrix(dsf: &DsfPair) -> Result<TransferMatrix> {
    let n = dsf.q.rows();
    TransferMatrix::identity(n).sub(&dsf.q).inverse()
}

/// `G = (I - Q)^-1 P`: the system transfer function.
pub fn transfer_function(dsf: &DsfPair) -> Result<TransferMatrix> {
    Ok(h_matrix(dsf)?.mul(&dsf.p))
}
