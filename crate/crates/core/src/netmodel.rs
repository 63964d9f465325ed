//! Linear network models.
//!
//! Two entry points: a social-influence network specification that gets
//! compiled into `xdot = -(L + Gamma) x + Gamma u`, and a direct `(A, b)`
//! matrix path for arbitrary LTI systems. Coefficients stay exact
//! rationals so downstream frequency-domain algebra is exact.

use crate::error::{Error, Result};
use crate::hinf::{self, StabilityVerdict};
use crate::ratfun::to_f64;
use num::rational::BigRational;
use num::{Signed, Zero};
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct InfluenceEdge {
    pub source: String,
    pub target: String,
    pub weight: BigRational,
}

#[derive(Debug, Clone)]
pub struct SourceSpec {
    pub name: String,
    pub sentiment: BigRational,
}

#[derive(Debug, Clone)]
pub struct PersuasibilityEntry {
    pub agent: String,
    pub source: String,
    pub weight: BigRational,
}

/// A social network: agents influencing each other, plus static broadcast
/// sources that pull agents toward fixed sentiments.
#[derive(Debug, Clone, Default)]
pub struct SocialNetworkSpec {
    pub agents: Vec<String>,
    pub edges: Vec<InfluenceEdge>,
    pub sources: Vec<SourceSpec>,
    pub persuasibility: Vec<PersuasibilityEntry>,
}

/// `xdot = A x + b` with an exposed-state subset.
#[derive(Debug, Clone)]
pub struct LinearModel {
    a: Vec<Vec<BigRational>>,
    b: Vec<BigRational>,
    exposed: Vec<usize>,
    labels: Vec<String>,
}

impl LinearModel {
    /// Direct construction. Only structural checks are applied (squareness,
    /// lengths, exposed indices), so non-social LTI systems pass through.
    pub fn new(
        a: Vec<Vec<BigRational>>,
        b: Vec<BigRational>,
        exposed: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidModel("empty state matrix".into()));
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidModel(format!(
                    "A row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
        }
        if b.len() != n {
            return Err(Error::InvalidModel(format!(
                "b has length {}, expected {}",
                b.len(),
                n
            )));
        }
        let exposed = exposed.unwrap_or_else(|| (0..n).collect());
        if exposed.is_empty() {
            return Err(Error::EmptyExposedSet);
        }
        let mut seen = vec![false; n];
        for &i in &exposed {
            if i >= n {
                return Err(Error::InvalidModel(format!(
                    "exposed index {} out of range 1..={}",
                    i + 1,
                    n
                )));
            }
            if seen[i] {
                return Err(Error::InvalidModel(format!(
                    "duplicate exposed index {}",
                    i + 1
                )));
            }
            seen[i] = true;
        }
        let labels =
            labels.unwrap_or_else(|| (1..=n).map(|i| format!("x{i}")).collect());
        if labels.len() != n {
            return Err(Error::InvalidModel("label count mismatch".into()));
        }
        Ok(LinearModel {
            a,
            b,
            exposed,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Vec<BigRational>] {
        &self.a
    }

    pub fn b(&self) -> &[BigRational] {
        &self.b
    }

    pub fn exposed(&self) -> &[usize] {
        &self.exposed
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_fully_exposed(&self) -> bool {
        let mut idx: Vec<usize> = self.exposed.clone();
        idx.sort_unstable();
        idx == (0..self.dim()).collect::<Vec<_>>()
    }

    pub fn with_exposed(&self, exposed: Vec<usize>) -> Result<Self> {
        LinearModel::new(
            self.a.clone(),
            self.b.clone(),
            Some(exposed),
            Some(self.labels.clone()),
        )
    }

    pub fn a_f64(&self) -> Vec<Vec<f64>> {
        self.a
            .iter()
            .map(|row| row.iter().map(to_f64).collect())
            .collect()
    }

    pub fn b_f64(&self) -> Vec<f64> {
        self.b.iter().map(to_f64).collect()
    }
}

/// Compile a network spec into the Taylor-form state matrix: off-diagonals
/// carry the incoming influence weights, diagonals absorb the row's total
/// incoming weight plus the agent's aggregate persuasibility, and `b`
/// carries the persuasibility-weighted source sentiments.
pub fn build_taylor_model(spec: &SocialNetworkSpec) -> Result<LinearModel> {
    let n = spec.agents.len();
    if n == 0 {
        return Err(Error::InvalidModel("network has no agents".into()));
    }
    let agent_index = |name: &str| -> Result<usize> {
        spec.agents
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownReference {
                kind: "agent",
                name: name.to_string(),
            })
    };
    let source_index = |name: &str| -> Result<usize> {
        spec.sources
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| Error::UnknownReference {
                kind: "source",
                name: name.to_string(),
            })
    };

    let mut a = vec![vec![BigRational::zero(); n]; n];
    for edge in &spec.edges {
        let src = agent_index(&edge.source)?;
        let tgt = agent_index(&edge.target)?;
        if src == tgt {
            return Err(Error::InvalidModel(format!(
                "self-edge on agent '{}'",
                edge.source
            )));
        }
        if edge.weight.is_negative() {
            return Err(Error::NegativeWeight {
                value: edge.weight.to_string(),
                context: format!("edge {} -> {}", edge.source, edge.target),
            });
        }
        // Edge j -> i contributes to A[i][j].
        a[tgt][src] += &edge.weight;
    }

    let mut gamma = vec![BigRational::zero(); n];
    let mut b = vec![BigRational::zero(); n];
    for p in &spec.persuasibility {
        let i = agent_index(&p.agent)?;
        let m = source_index(&p.source)?;
        if p.weight.is_negative() {
            return Err(Error::NegativeWeight {
                value: p.weight.to_string(),
                context: format!("persuasibility of '{}' toward '{}'", p.agent, p.source),
            });
        }
        gamma[i] += &p.weight;
        b[i] += &p.weight * &spec.sources[m].sentiment;
    }
    // gamma_ii = 0 forces b_i = 0 by construction (no persuasibility terms).

    for i in 0..n {
        let incoming: BigRational = (0..n).filter(|&j| j != i).map(|j| a[i][j].clone()).sum();
        a[i][i] = -(incoming + &gamma[i]);
    }

    LinearModel::new(a, b, None, Some(spec.agents.clone()))
}

/// Diagnostics for a model: spectrum, stability verdict, and whether the
/// Taylor structural pattern holds. Never fails; reporting only.
#[derive(Debug, Clone)]
pub struct ModelDiagnostics {
    pub spectrum: Vec<Complex64>,
    pub verdict: StabilityVerdict,
    pub nonnegative_off_diagonals: bool,
    pub diagonally_dominant: bool,
}

pub fn validate_model(model: &LinearModel) -> ModelDiagnostics {
    let a = model.a_f64();
    let spectrum = hinf::spectrum_f64(&a);
    let verdict = hinf::verdict_from_spectrum(&spectrum, &a);
    let n = model.dim();
    let mut nonneg = true;
    let mut dominant = true;
    for i in 0..n {
        let mut off_sum = BigRational::zero();
        for j in 0..n {
            if i == j {
                continue;
            }
            if model.a()[i][j].is_negative() {
                nonneg = false;
            }
            off_sum += model.a()[i][j].abs();
        }
        if -&model.a()[i][i] < off_sum {
            dominant = false;
        }
    }
    ModelDiagnostics {
        spectrum,
        verdict,
        nonnegative_off_diagonals: nonneg,
        diagonally_dominant: dominant,
    }
}
