// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Trace-class operators on the truncated Fock space `span{|0>, ..., |N-1>}`.

use crate::borel::PhasePoint;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, HermitianEigen};
use crate::scalar::{c0, cis, cr, Real, C};
use crate::tolerance::Tolerances;

/// A trace-class operator `T` at truncation `dim`, with `entries[[m, n]] = <m|T|n>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState<T: Real> {
    entries: CMatrix<T>,
    hermitian: bool,
    state: bool,
    truncation_weight: Option<T>,
}

impl<T: Real> FockState<T> {
    /// Wraps an arbitrary square matrix, classifying it with the default
    /// tolerances.
    pub fn from_matrix(entries: CMatrix<T>) -> Result<Self> {
        Self::from_matrix_with(entries, &T::default_tolerances())
    }

    pub fn from_matrix_with(entries: CMatrix<T>, tol: &Tolerances) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::EmptyDimension);
        }
        let hermitian = linalg::hermitian_deviation(&entries) <= T::lit(tol.hermitian);
        let state = hermitian && is_state_matrix(&entries, tol);
        Ok(Self {
            entries,
            hermitian,
            state,
            truncation_weight: None,
        })
    }

    /// Rank-one projector `|n><n|`.
    pub fn number(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::IndexOutOfRange { index: n, dim });
        }
        let mut entries = CMatrix::from_elem((dim, dim), c0());
        entries[[n, n]] = cr(T::one());
        Ok(Self::pure(entries))
    }

    /// Projector onto the normalized vector `coeffs`.
    pub fn from_vector(coeffs: &CVector<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let norm = linalg::vector_norm(coeffs);
        if !(norm > T::zero()) {
            return Err(Error::ZeroVector);
        }
        let v = coeffs.mapv(|z| z / norm);
        Ok(Self::pure(linalg::outer(&v)))
    }

    /// Truncated coherent state `|z>` with coefficients `z^n / sqrt(n!)`,
    /// renormalized to trace one. The weight `e^{-|z|^2} sum_{n<dim} |z|^{2n}/n!`
    /// the truncated space carried before renormalization is kept as metadata.
    pub fn coherent(z: C<T>, dim: usize) -> Result<Self> {
        let v = coherent_vector(z, dim)?;
        let norm_sqr = v.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr());
        let weight = (-z.norm_sqr()).exp() * norm_sqr;
        let mut state = Self::from_vector(&v)?;
        state.truncation_weight = Some(weight);
        Ok(state)
    }

    pub(crate) fn with_flags(entries: CMatrix<T>, hermitian: bool, state: bool) -> Self {
        Self {
            entries,
            hermitian,
            state,
            truncation_weight: None,
        }
    }

    fn pure(entries: CMatrix<T>) -> Self {
        Self {
            entries,
            hermitian: true,
            state: true,
            truncation_weight: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix<T> {
        self.entries
    }

    /// `<m|T|n>`.
    pub fn get(&self, m: usize, n: usize) -> C<T> {
        self.entries[[m, n]]
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Positive semidefinite with unit trace.
    pub fn is_state(&self) -> bool {
        self.state
    }

    pub fn trace(&self) -> C<T> {
        linalg::trace(&self.entries)
    }

    /// Pre-renormalization weight of a truncated coherent state.
    pub fn truncation_weight(&self) -> Option<T> {
        self.truncation_weight
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        HermitianEigen::new(&self.entries).values
    }

    /// `R(theta) T R(theta)^*`, i.e. `<m|T|n>` times `e^{i(m-n)theta}`.
    pub fn phase_shift(&self, theta: PhasePoint<T>) -> Self {
        let t = theta.value();
        let dim = self.dim();
        let mut entries = self.entries.clone();
        for m in 0..dim {
            for n in 0..dim {
                if m != n {
                    let k = T::from_usize_lossy(m) - T::from_usize_lossy(n);
                    entries[[m, n]] = entries[[m, n]] * cis(k * t);
                }
            }
        }
        Self {
            entries,
            hermitian: self.hermitian,
            state: self.state,
            truncation_weight: self.truncation_weight,
        }
    }

    /// Decomposes `T = a T_a - b T_b + i c T_c - i d T_d` into states `T_u`
    /// with nonnegative weights, from the spectral splitting of the Hermitian
    /// and anti-Hermitian parts.
    pub fn four_state_decomposition(&self) -> FourStateDecomposition<T> {
        let dim = self.dim();
        let re_part = linalg::hermitian_part(&self.entries);
        let mut im_part = CMatrix::from_elem((dim, dim), c0());
        let half_i = C::new(T::zero(), T::lit(-0.5));
        for m in 0..dim {
            for n in 0..dim {
                // (T - T^*) / (2i)
                im_part[[m, n]] = (self.entries[[m, n]] - self.entries[[n, m]].conj()) * half_i;
            }
        }
        let (alpha, beta) = spectral_split(&re_part);
        let (gamma, delta) = spectral_split(&im_part);
        FourStateDecomposition {
            parts: [alpha, beta, gamma, delta],
        }
    }
}

/// Coefficients `z^n / sqrt(n!)` for `n < dim`, unnormalized.
pub fn coherent_vector<T: Real>(z: C<T>, dim: usize) -> Result<CVector<T>> {
    if dim == 0 {
        return Err(Error::EmptyDimension);
    }
    let mut v = CVector::from_elem(dim, c0());
    v[0] = cr(T::one());
    for n in 1..dim {
        v[n] = v[n - 1] * z / T::from_usize_lossy(n).sqrt();
    }
    Ok(v)
}

fn is_state_matrix<T: Real>(entries: &CMatrix<T>, tol: &Tolerances) -> bool {
    let tr = linalg::trace(entries);
    if (tr - cr(T::one())).norm() > T::lit(tol.trace) {
        return false;
    }
    let eig = HermitianEigen::new(entries);
    let scale = eig.max().abs().max(eig.min().abs());
    eig.min() >= -T::lit(tol.state_psd_rel) * scale
}

fn spectral_split<T: Real>(h: &CMatrix<T>) -> (WeightedState<T>, WeightedState<T>) {
    let eig = HermitianEigen::new(h);
    let pos = eig.reconstruct_with(|x| x.max(T::zero()));
    let neg = eig.reconstruct_with(|x| (-x).max(T::zero()));
    (WeightedState::from_positive(pos), WeightedState::from_positive(neg))
}

/// `weight * state`; the state is absent when the weight vanishes.
#[derive(Debug, Clone)]
pub struct WeightedState<T: Real> {
    pub weight: T,
    pub state: Option<FockState<T>>,
}

impl<T: Real> WeightedState<T> {
    fn from_positive(p: CMatrix<T>) -> Self {
        let weight = linalg::trace(&p).re;
        if weight <= T::zero() {
            return Self {
                weight: T::zero(),
                state: None,
            };
        }
        let entries = p.mapv(|z| z / weight);
        Self {
            weight,
            state: Some(FockState {
                entries,
                hermitian: true,
                state: true,
                truncation_weight: None,
            }),
        }
    }
}

/// The four-state decomposition `T = a T_a - b T_b + i c T_c - i d T_d`.
#[derive(Debug, Clone)]
pub struct FourStateDecomposition<T: Real> {
    /// `[a T_a, b T_b, c T_c, d T_d]`.
    pub parts: [WeightedState<T>; 4],
}

impl<T: Real> FourStateDecomposition<T> {
    /// Complex coefficient of each part: `[1, -1, i, -i]`.
    pub fn signs() -> [C<T>; 4] {
        [
            cr(T::one()),
            cr(-T::one()),
            C::new(T::zero(), T::one()),
            C::new(T::zero(), -T::one()),
        ]
    }

    /// Evaluates a linear functional on `T` through its values on the states.
    pub fn combine(&self, mut f: impl FnMut(&FockState<T>) -> C<T>) -> C<T> {
        let mut acc = c0();
        for (part, sign) in self.parts.iter().zip(Self::signs()) {
            if let Some(state) = &part.state {
                acc = acc + sign * f(state) * part.weight;
            }
        }
        acc
    }

    pub fn recombine(&self, dim: usize) -> CMatrix<T> {
        let mut out = CMatrix::from_elem((dim, dim), c0());
        for (part, sign) in self.parts.iter().zip(Self::signs()) {
            if let Some(state) = &part.state {
                out = out + state.entries().mapv(|z| z * sign * part.weight);
            }
        }
        out
    }
}

pub fn make_number_state<T: Real>(n: usize, dim: usize) -> Result<FockState<T>> {
    FockState::number(n, dim)
}

pub fn make_coherent_state<T: Real>(z: C<T>, dim: usize) -> Result<FockState<T>> {
    FockState::coherent(z, dim)
}

pub fn make_vector_state<T: Real>(coeffs: &CVector<T>) -> Result<FockState<T>> {
    FockState::from_vector(coeffs)
}

pub fn phase_shift_state<T: Real>(t: &FockState<T>, theta: PhasePoint<T>) -> FockState<T> {
    t.phase_shift(theta)
}
