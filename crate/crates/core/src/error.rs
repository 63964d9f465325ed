//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("evaluation at a pole: denominator vanishes at {point}")]
    PoleEvaluation { point: String },
    #[error("singular transfer matrix: {witness}")]
    SingularMatrix { witness: String },
    #[error("root finding did not converge after {iterations} iterations")]
    RootsNotConverged { iterations: usize },
    #[error("nearly coincident poles (gap {gap:.3e} < 1e-8): partial fractions ill-conditioned")]
    IllConditionedPoles { gap: f64 },
    #[error("partial fractions requires a nonconstant denominator")]
    ConstantDenominator,
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unknown {kind} reference '{name}' in network spec")]
    UnknownReference { kind: &'static str, name: String },
    #[error("negative weight {value} for {context}")]
    NegativeWeight { value: String, context: String },
    #[error("exposed set is empty")]
    EmptyExposedSet,
    #[error("H-infinity norm undefined: {reason}")]
    NormUndefined { reason: String },
    #[error("model is not asymptotically stable (verdict: {verdict})")]
    UnstableModel { verdict: String },
    #[error("perturbation synthesis infeasible: {reason}")]
    SynthesisInfeasible { reason: String },
    #[error("realization requires full exposure (hidden states present)")]
    HiddenStatesUnsupported,
    #[error("singular implicit solve: |1 - alpha| = {value:.3e}")]
    SingularImplicitSolve { value: f64 },
    #[error("nonfinite state encountered at t = {time}")]
    NonFiniteState { time: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
