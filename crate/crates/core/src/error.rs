// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::algebra::Diagnosis;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for truncation dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension must be positive")]
    EmptyDimension,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("vector has zero norm")]
    ZeroVector,

    #[error("invalid interval [{a}, {b}): endpoints must satisfy 0 <= a <= b <= 2pi")]
    InvalidInterval { a: f64, b: f64 },

    #[error("operator is not a state: {0}")]
    NotAState(String),

    #[error("not a phase matrix: {0}")]
    InvalidPhaseMatrix(Diagnosis),

    #[error("factorization failed: reconstruction residual {residual:e}")]
    Factorization { residual: f64 },

    #[error("factorization failed: vector {index} has norm {norm} (expected 1)")]
    NonUnitColumn { index: usize, norm: f64 },

    #[error("phase-state normalization violated in column {column}: sum |<n|F_k)|^2 = {value}")]
    Normalization { column: usize, value: f64 },

    #[error("phase state entry {index} has modulus {modulus} > 1")]
    UnboundedPhaseState { index: usize, modulus: f64 },

    #[error("no Hadamard inverse: zero entries at {positions:?}")]
    NoInverse { positions: Vec<(usize, usize)> },

    #[error("invalid convex weights: {0}")]
    InvalidWeights(String),

    #[error("epsilon {epsilon} outside the domain {domain} of the {kernel} kernel")]
    EpsilonOutOfDomain {
        kernel: &'static str,
        epsilon: f64,
        domain: &'static str,
    },

    #[error("probability {raw} is outside [0, 1] beyond float noise")]
    ProbabilityOutOfRange { raw: f64, imag: f64 },

    #[error("invalid grid size {0}")]
    InvalidGrid(usize),

    #[error("unknown tolerance key or invalid value: {key}={value}")]
    InvalidTolerance { key: String, value: f64 },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),
}
