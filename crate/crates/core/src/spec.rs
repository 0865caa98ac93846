// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON descriptions of matrices, observables, states and Borel sets.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major. Angles
//! are radians unless [`Context::degrees`] is set, which converts on input
//! only.

use ndarray::Array1;
use serde::{Deserialize, Serialize};

use crate::algebra::{self, PhaseMatrix, StructureMatrix};
use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::linalg::{CMatrix, CVector};
use crate::scalar::{Real, C};
use crate::tolerance::Tolerances;

pub type Pair = [f64; 2];

/// Defaults applied while building from a spec.
#[derive(Debug, Clone, Default)]
pub struct Context {
    /// Fallback dimension for specs that omit `dim`.
    pub dim: Option<usize>,
    pub degrees: bool,
    pub tol: Tolerances,
}

impl Context {
    fn dim(&self, own: Option<usize>, what: &str) -> Result<usize> {
        own.or(self.dim)
            .ok_or_else(|| Error::InvalidSpec(format!("{what}: no dim given and no --dim fallback")))
    }

    fn angle(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatrixSpec {
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        entries: Vec<Pair>,
    },
    Canonical {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
    Kronecker {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
    /// Rows `psi_n`; the matrix is `<psi_n|psi_m>`.
    Gram { vectors: Vec<Vec<Pair>> },
    /// Columns `F_k` with entries `<n|F_k)`.
    PhaseStates { members: Vec<Vec<Pair>> },
    Unimodular { upsilon: Vec<f64> },
    Convex {
        parts: Vec<MatrixSpec>,
        weights: Vec<f64>,
    },
    /// `canonical` or `trivial`.
    Named {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
}

fn complex<T: Real>(p: &Pair) -> C<T> {
    C::new(T::lit(p[0]), T::lit(p[1]))
}

fn pair<T: Real>(z: &C<T>) -> Pair {
    [z.re.to_f64_lossy(), z.im.to_f64_lossy()]
}

fn vector<T: Real>(coeffs: &[Pair]) -> CVector<T> {
    coeffs.iter().map(complex).collect()
}

fn square<T: Real>(dim: Option<usize>, entries: &[Pair], what: &str) -> Result<CMatrix<T>> {
    let n = match dim {
        Some(n) => n,
        None => {
            let n = (entries.len() as f64).sqrt().round() as usize;
            if n * n != entries.len() {
                return Err(Error::InvalidSpec(format!(
                    "{what}: {} entries do not form a square matrix",
                    entries.len()
                )));
            }
            n
        }
    };
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if entries.len() != n * n {
        return Err(Error::InvalidSpec(format!(
            "{what}: expected {} entries for dim {n}, found {}",
            n * n,
            entries.len()
        )));
    }
    let data: Vec<C<T>> = entries.iter().map(complex).collect();
    Ok(CMatrix::from_shape_vec((n, n), data).expect("length checked"))
}

impl MatrixSpec {
    /// Builds the structure matrix without checking phase-matrix invariants.
    pub fn build<T: Real>(&self, ctx: &Context) -> Result<StructureMatrix<T>> {
        match self {
            Self::Explicit { dim, entries } => StructureMatrix::new(square(*dim, entries, "explicit")?),
            Self::Canonical { dim } => Ok(StructureMatrix::canonical(ctx.dim(*dim, "canonical")?)),
            Self::Kronecker { dim } => Ok(StructureMatrix::kronecker(ctx.dim(*dim, "kronecker")?)),
            Self::Gram { vectors } => {
                let v: Vec<CVector<T>> = vectors.iter().map(|v| vector(v)).collect();
                StructureMatrix::from_gram(&v)
            }
            Self::PhaseStates { members } => {
                let v: Vec<CVector<T>> = members.iter().map(|v| vector(v)).collect();
                StructureMatrix::from_phase_states(&v)
            }
            Self::Unimodular { upsilon } => {
                if upsilon.is_empty() {
                    return Err(Error::EmptyDimension);
                }
                let u: Vec<T> = upsilon.iter().map(|&x| T::lit(ctx.angle(x))).collect();
                Ok(StructureMatrix::unimodular(&u))
            }
            Self::Convex { parts, weights } => {
                let parts = parts
                    .iter()
                    .map(|p| p.build_phase::<T>(ctx))
                    .collect::<Result<Vec<_>>>()?;
                let w: Vec<T> = weights.iter().map(|&x| T::lit(x)).collect();
                Ok(algebra::convex_combine_with(&parts, &w, &ctx.tol)?.into_structure())
            }
            Self::Named { name, dim } => {
                let n = ctx.dim(*dim, "named")?;
                match name.as_str() {
                    "canonical" => Ok(StructureMatrix::canonical(n)),
                    "trivial" => Ok(StructureMatrix::kronecker(n)),
                    other => Err(Error::InvalidSpec(format!(
                        "unknown observable name {other:?} (expected canonical or trivial)"
                    ))),
                }
            }
        }
    }

    /// Builds and validates as a phase matrix.
    pub fn build_phase<T: Real>(&self, ctx: &Context) -> Result<PhaseMatrix<T>> {
        PhaseMatrix::validate_with(self.build(ctx)?, &ctx.tol)
    }

    /// A display label for named and parametric families.
    pub fn label(&self) -> Option<String> {
        match self {
            Self::Canonical { .. } => Some("canonical".into()),
            Self::Kronecker { .. } => Some("trivial".into()),
            Self::Named { name, .. } => Some(name.clone()),
            _ => None,
        }
    }

    pub fn explicit<T: Real>(m: &StructureMatrix<T>) -> Self {
        Self::Explicit {
            dim: Some(m.dim()),
            entries: m.entries().iter().map(pair).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Number {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
    Coherent {
        z: Pair,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
    /// Normalized on input; zero-padded up to `dim` when that is larger.
    Vector {
        coeffs: Vec<Pair>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
    /// Any trace-class matrix.
    Density {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        entries: Vec<Pair>,
    },
}

impl StateSpec {
    pub fn build<T: Real>(&self, ctx: &Context) -> Result<FockState<T>> {
        match self {
            Self::Number { n, dim } => FockState::number(*n, ctx.dim(*dim, "number state")?),
            Self::Coherent { z, dim } => FockState::coherent(complex(z), ctx.dim(*dim, "coherent state")?),
            Self::Vector { coeffs, dim } => {
                let len = dim.or(ctx.dim).unwrap_or(coeffs.len()).max(coeffs.len());
                if dim.is_some_and(|d| d < coeffs.len()) {
                    return Err(Error::InvalidSpec(format!(
                        "vector state: {} coefficients exceed dim {}",
                        coeffs.len(),
                        dim.unwrap()
                    )));
                }
                let mut v: CVector<T> = Array1::from_elem(len, C::new(T::zero(), T::zero()));
                for (slot, p) in v.iter_mut().zip(coeffs) {
                    *slot = complex(p);
                }
                FockState::from_vector(&v)
            }
            Self::Density { dim, entries } => FockState::from_matrix_with(square(*dim, entries, "density")?, &ctx.tol),
        }
    }

    pub fn density<T: Real>(t: &FockState<T>) -> Self {
        Self::Density {
            dim: Some(t.dim()),
            entries: t.entries().iter().map(pair).collect(),
        }
    }

    pub fn vector<T: Real>(v: &CVector<T>) -> Self {
        Self::Vector {
            coeffs: v.iter().map(pair).collect(),
            dim: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BorelSpec {
    pub intervals: Vec<Pair>,
}

impl BorelSpec {
    pub fn build<T: Real>(&self, ctx: &Context) -> Result<BorelSet<T>> {
        BorelSet::new(
            self.intervals
                .iter()
                .map(|[a, b]| (T::lit(ctx.angle(*a)), T::lit(ctx.angle(*b)))),
        )
    }

    pub fn from_set<T: Real>(x: &BorelSet<T>) -> Self {
        Self {
            intervals: x
                .intervals()
                .iter()
                .map(|(a, b)| [a.to_f64_lossy(), b.to_f64_lossy()])
                .collect(),
        }
    }
}
