// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Covariant phase observables on truncated Fock spaces.
//!
//! A phase matrix `(c_{n,m})`, positive semidefinite with unit diagonal,
//! defines the phase observable
//! `E(X) = sum_{n,m} c_{n,m} i_{n-m}(X) |n><m|` on `[0, 2pi)`. This crate
//! builds such matrices from Gram vectors or phase states, evaluates the
//! resulting probabilities and densities, implements the Schur-multiplier
//! operations `T -> (c_{m,n} T_{n,m})` and the structure-matrix algebra with
//! its divisibility order and phase equivalence.
//!
//! Everything is generic over the real scalar (`f32` or `f64`); the `*F64`
//! and `*F32` aliases below fix it.

// `!(x <= tol)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod borel;
pub mod cli;
pub mod density;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod observables;
pub mod operations;
pub mod sampling;
pub mod scalar;
pub mod spec;
pub mod tolerance;

pub use algebra::{PhaseMatrix, StructureMatrix};
pub use borel::{BorelSet, PhasePoint};
pub use density::{DensityCurve, DensityEstimator, KernelKind};
pub use error::{Error, Result};
pub use fock::FockState;
pub use observables::{CovariantGOM, PhaseObservable};
pub use operations::SchurOperation;
pub use scalar::{Real, C};
pub use tolerance::Tolerances;

pub type StructureMatrixF64 = StructureMatrix<f64>;
pub type PhaseMatrixF64 = PhaseMatrix<f64>;
pub type FockStateF64 = FockState<f64>;
pub type BorelSetF64 = BorelSet<f64>;
pub type PhasePointF64 = PhasePoint<f64>;
pub type PhaseObservableF64 = PhaseObservable<f64>;
pub type SchurOperationF64 = SchurOperation<f64>;
pub type DensityCurveF64 = DensityCurve<f64>;

pub type StructureMatrixF32 = StructureMatrix<f32>;
pub type PhaseMatrixF32 = PhaseMatrix<f32>;
pub type FockStateF32 = FockState<f32>;
pub type BorelSetF32 = BorelSet<f32>;
pub type PhasePointF32 = PhasePoint<f32>;
pub type PhaseObservableF32 = PhaseObservable<f32>;
pub type SchurOperationF32 = SchurOperation<f32>;
pub type DensityCurveF32 = DensityCurve<f32>;
