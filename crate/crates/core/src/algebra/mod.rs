// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! The algebra of structure matrices under the entrywise (Hadamard) product.
//!
//! A structure matrix `(d_{n,m})` is any bounded complex matrix; it defines a
//! covariant generalized operator measure. The algebra is commutative, its
//! unit is the all-ones (canonical) matrix, the involution is entrywise
//! conjugation and the norm is the supremum of the entry moduli.

mod order;
mod phase;

pub use order::{equiv_phase, equiv_phase_with, order_leq, order_leq_with, EquivDecision,
    EquivFailure, OrderDecision, PhaseComponent};
pub use phase::{
    convex_combine, convex_combine_with, diagnose, gram_factorize, gram_factorize_with, is_canonical_ue,
    is_canonical_ue_with, phase_state_factorize, phase_state_factorize_with,
    synthesize_from_family, validate_phase_matrix, validate_phase_matrix_with, Diagnosis,
    Failure, GramFactorization, PhaseMatrix, PhaseStateFamily,
};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::scalar::{c0, c1, cis, Real, C};
use crate::tolerance::Tolerances;

/// A finite truncation of a bounded complex matrix `(d_{n,m})`.
#[derive(Debug, Clone)]
pub struct StructureMatrix<T: Real> {
    entries: CMatrix<T>,
    sup_norm: T,
}

impl<T: Real> PartialEq for StructureMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl<T: Real> StructureMatrix<T> {
    pub fn new(entries: CMatrix<T>) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::EmptyDimension);
        }
        let sup_norm = linalg::sup_norm(&entries);
        Ok(Self { entries, sup_norm })
    }

    pub(crate) fn from_entries_unchecked(entries: CMatrix<T>) -> Self {
        let sup_norm = linalg::sup_norm(&entries);
        Self { entries, sup_norm }
    }

    /// All ones: the algebra unit.
    pub fn canonical(dim: usize) -> Self {
        Self::from_entries_unchecked(CMatrix::from_elem((dim, dim), c1()))
    }

    /// `delta_{n,m}`.
    pub fn kronecker(dim: usize) -> Self {
        Self::from_entries_unchecked(linalg::identity(dim))
    }

    /// `e^{i(u_n - u_m)}`.
    pub fn unimodular(upsilon: &[T]) -> Self {
        let dim = upsilon.len();
        let mut entries = CMatrix::from_elem((dim, dim), c0());
        for n in 0..dim {
            for m in 0..dim {
                entries[[n, m]] = if n == m {
                    c1()
                } else {
                    cis(upsilon[n] - upsilon[m])
                };
            }
        }
        Self::from_entries_unchecked(entries)
    }

    /// Gram matrix `<psi_n|psi_m>`.
    pub fn from_gram(vectors: &[CVector<T>]) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let len = vectors[0].len();
        if let Some(bad) = vectors.iter().find(|v| v.len() != len) {
            return Err(Error::DimensionMismatch {
                left: len,
                right: bad.len(),
            });
        }
        let mut entries = CMatrix::from_elem((dim, dim), c0());
        for n in 0..dim {
            for m in 0..dim {
                entries[[n, m]] = linalg::inner(&vectors[n], &vectors[m]);
            }
        }
        Ok(Self::from_entries_unchecked(entries))
    }

    /// `sum_k |F_k)(F_k|`, i.e. entries `sum_k <n|F_k) conj(<m|F_k))`.
    pub fn from_phase_states(members: &[CVector<T>]) -> Result<Self> {
        let dim = members.first().map(|f| f.len()).ok_or(Error::EmptyDimension)?;
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if let Some(bad) = members.iter().find(|f| f.len() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: bad.len(),
            });
        }
        let mut entries = CMatrix::from_elem((dim, dim), c0());
        for f in members {
            for n in 0..dim {
                for m in 0..dim {
                    entries[[n, m]] = entries[[n, m]] + f[n] * f[m].conj();
                }
            }
        }
        Ok(Self::from_entries_unchecked(entries))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn get(&self, n: usize, m: usize) -> C<T> {
        self.entries[[n, m]]
    }

    /// `sup |d_{n,m}|`.
    pub fn sup_norm(&self) -> T {
        self.sup_norm
    }

    /// `sum |d_{n,m}|`; the truncated trace-summable (pre-dual) norm.
    pub fn abs_sum(&self) -> T {
        linalg::abs_sum(&self.entries)
    }

    /// Membership in the entrywise-summable class. Always true for finite
    /// entries at truncation.
    pub fn is_trace_summable(&self) -> bool {
        self.abs_sum().is_finite()
    }

    /// Normalized GOM: `d_{n,n} = 1` for all `n`.
    pub fn has_unit_diagonal(&self, tol: T) -> bool {
        (0..self.dim()).all(|n| (self.entries[[n, n]] - c1()).norm() <= tol)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// `(d_{n,m} e_{n,m})`.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut entries = self.entries.clone();
        entries.zip_mut_with(&other.entries, |a, b| *a = *a * *b);
        Ok(Self::from_entries_unchecked(entries))
    }

    /// `(conj d_{n,m})`.
    pub fn involution(&self) -> Self {
        Self {
            entries: self.entries.mapv(|z| z.conj()),
            sup_norm: self.sup_norm,
        }
    }

    /// `(d_{n,m}^{-1})`, which exists iff no entry vanishes.
    pub fn hadamard_inverse(&self) -> Result<Self> {
        self.hadamard_inverse_with(&T::default_tolerances())
    }

    pub fn hadamard_inverse_with(&self, tol: &Tolerances) -> Result<Self> {
        let zero = T::lit(tol.zero);
        let positions: Vec<(usize, usize)> = self
            .entries
            .indexed_iter()
            .filter(|(_, z)| !(z.norm() > zero))
            .map(|(ix, _)| ix)
            .collect();
        if !positions.is_empty() {
            return Err(Error::NoInverse { positions });
        }
        Ok(Self::from_entries_unchecked(self.entries.mapv(|z| c1::<T>() / z)))
    }

    pub fn scale(&self, w: T) -> Self {
        Self::from_entries_unchecked(self.entries.mapv(|z| z * w))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        linalg::max_abs_diff(&self.entries, &other.entries)
    }
}

pub fn hadamard_product<T: Real>(
    a: &StructureMatrix<T>,
    b: &StructureMatrix<T>,
) -> Result<StructureMatrix<T>> {
    a.hadamard(b)
}

pub fn involution<T: Real>(a: &StructureMatrix<T>) -> StructureMatrix<T> {
    a.involution()
}

pub fn hadamard_inverse<T: Real>(a: &StructureMatrix<T>) -> Result<StructureMatrix<T>> {
    a.hadamard_inverse()
}
