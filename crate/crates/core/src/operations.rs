// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! The covariant trace-preserving operation attached to a phase observable.
//!
//! For a phase matrix `C`, `Theta(T) = sum_{n,m} c_{m,n} T_{n,m} |n><m|`:
//! entrywise multiplication by the *transpose* of `C`. It satisfies
//! `tr(T E(X)) = tr(Theta(T) E_can(X))`, commutes with phase shifts and has
//! diagonal Kraus operators built from the phase-state factorization of `C`.

use serde::Serialize;

use crate::algebra::{self, PhaseMatrix};
use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::linalg::{self, CMatrix, CVector};
use crate::scalar::{c0, cr, Real};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct SchurOperation<T: Real> {
    pub matrix: PhaseMatrix<T>,
}

impl<T: Real> SchurOperation<T> {
    pub fn new(matrix: PhaseMatrix<T>) -> Self {
        Self { matrix }
    }

    /// The identity channel.
    pub fn canonical(dim: usize) -> Self {
        Self::new(PhaseMatrix::canonical(dim))
    }

    /// Complete dephasing in the number basis.
    pub fn trivial(dim: usize) -> Self {
        Self::new(PhaseMatrix::trivial(dim))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    fn check(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: dim,
            });
        }
        Ok(())
    }

    /// `Theta(T)_{n,m} = c_{m,n} T_{n,m}`.
    pub fn apply(&self, t: &FockState<T>) -> Result<FockState<T>> {
        self.check(t.dim())?;
        let dim = self.dim();
        let mut out = t.entries().clone();
        for n in 0..dim {
            for m in 0..dim {
                if n != m {
                    out[[n, m]] = self.matrix.get(m, n) * out[[n, m]];
                }
            }
        }
        Ok(FockState::with_flags(out, t.is_hermitian(), t.is_state()))
    }

    /// `Theta^*(A)_{n,m} = c_{n,m} A_{n,m}`.
    pub fn apply_dual(&self, a: &CMatrix<T>) -> Result<CMatrix<T>> {
        let (rows, cols) = a.dim();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        self.check(rows)?;
        let mut out = a.clone();
        out.zip_mut_with(self.matrix.structure().entries(), |x, c| *x = *x * *c);
        Ok(out)
    }

    /// The operation of `C1 * C2`, equal to applying both in either order.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.matrix.hadamard(&other.matrix)?))
    }

    pub fn kraus(&self) -> Result<KrausFamily<T>> {
        kraus_decompose(self)
    }

    pub fn classify(&self) -> Result<Classification<T>> {
        classify(self)
    }
}

/// Diagonal Kraus operators, stored as their diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausFamily<T: Real> {
    pub diagonals: Vec<CVector<T>>,
}

impl<T: Real> KrausFamily<T> {
    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    /// Dense `A_k`.
    pub fn operator(&self, k: usize) -> CMatrix<T> {
        let d = &self.diagonals[k];
        let mut m = CMatrix::from_elem((d.len(), d.len()), c0());
        for (i, z) in d.iter().enumerate() {
            m[[i, i]] = *z;
        }
        m
    }

    /// Diagonal of `sum_k A_k A_k^*`.
    pub fn resolution(&self) -> Vec<T> {
        let dim = self.diagonals.first().map_or(0, |d| d.len());
        (0..dim)
            .map(|n| self.diagonals.iter().fold(T::zero(), |acc, d| acc + d[n].norm_sqr()))
            .collect()
    }

    /// `max_n |(sum_k A_k A_k^*)_{nn} - 1|`; off-diagonals vanish identically.
    pub fn resolution_deviation(&self) -> T {
        self.resolution()
            .into_iter()
            .fold(T::zero(), |m, x| m.max((x - T::one()).abs()))
    }

    /// `sum_k A_k T A_k^*`.
    pub fn apply(&self, t: &CMatrix<T>) -> CMatrix<T> {
        let dim = t.nrows();
        let mut out = CMatrix::from_elem((dim, dim), c0());
        for d in &self.diagonals {
            for n in 0..dim {
                for m in 0..dim {
                    out[[n, m]] = out[[n, m]] + d[n] * t[[n, m]] * d[m].conj();
                }
            }
        }
        out
    }
}

/// `(A_k)_{nn} = conj(<n|F_k))` for the phase-state family of the matrix.
pub fn kraus_decompose<T: Real>(op: &SchurOperation<T>) -> Result<KrausFamily<T>> {
    let family = algebra::phase_state_factorize(&op.matrix)?;
    Ok(KrausFamily {
        diagonals: family
            .members()
            .iter()
            .map(|f| f.mapv(|z| z.conj()))
            .collect(),
    })
}

pub fn apply<T: Real>(op: &SchurOperation<T>, t: &FockState<T>) -> Result<FockState<T>> {
    op.apply(t)
}

pub fn apply_dual<T: Real>(op: &SchurOperation<T>, a: &CMatrix<T>) -> Result<CMatrix<T>> {
    op.apply_dual(a)
}

pub fn compose<T: Real>(a: &SchurOperation<T>, b: &SchurOperation<T>) -> Result<SchurOperation<T>> {
    a.compose(b)
}

/// `|| Theta(P)^2 - Theta(P) ||` for `P = |psi><psi|` with `psi` normalized.
pub fn pure_state_defect<T: Real>(op: &SchurOperation<T>, psi: &CVector<T>) -> Result<T> {
    let p = FockState::from_vector(psi)?;
    let image = op.apply(&p)?.into_entries();
    let sq = linalg::matmul(&image, &image);
    Ok(linalg::operator_norm(&(sq - &image)))
}

/// Evidence attached to a classification.
#[derive(Debug, Clone, PartialEq)]
pub struct Witnesses<T: Real> {
    /// An entry `c_{n,m}` that vanishes (kills `|n><m|`).
    pub zero_entry: Option<(usize, usize)>,
    /// A state `(|n> + |m>)(<n| + <m|)/2` outside the image of the states.
    pub unreachable_state: Option<(usize, usize, FockState<T>)>,
    /// A unit vector whose projector is not mapped to a projector, with the
    /// measured defect.
    pub non_pure_image: Option<(CVector<T>, T)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification<T: Real> {
    pub injective: bool,
    pub surjective_on_states: bool,
    pub bijective_on_states: bool,
    pub preserves_pure_states: bool,
    pub witnesses: Witnesses<T>,
}

/// Flags as plain booleans for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassificationFlags {
    pub injective: bool,
    pub surjective_on_states: bool,
    pub bijective_on_states: bool,
    pub preserves_pure_states: bool,
}

impl<T: Real> Classification<T> {
    pub fn flags(&self) -> ClassificationFlags {
        ClassificationFlags {
            injective: self.injective,
            surjective_on_states: self.surjective_on_states,
            bijective_on_states: self.bijective_on_states,
            preserves_pure_states: self.preserves_pure_states,
        }
    }
}

pub fn classify<T: Real>(op: &SchurOperation<T>) -> Result<Classification<T>> {
    classify_with(op, &T::default_tolerances())
}

/// Injective iff no `c_{n,m}` vanishes; surjective, bijective and
/// pure-state preserving iff every `|c_{n,m}| = 1`.
pub fn classify_with<T: Real>(op: &SchurOperation<T>, tol: &Tolerances) -> Result<Classification<T>> {
    let c = &op.matrix;
    let dim = c.dim();
    let zero = T::lit(tol.zero);
    let zero_entry = c
        .structure()
        .entries()
        .indexed_iter()
        .find(|(_, z)| !(z.norm() > zero))
        .map(|(ix, _)| ix);
    let injective = zero_entry.is_none();
    let unimodular = algebra::is_canonical_ue_with(c, tol);

    let mut witnesses = Witnesses {
        zero_entry,
        unreachable_state: None,
        non_pure_image: None,
    };
    if !unimodular {
        let one = T::one() - T::lit(tol.unimodular);
        let pair = (0..dim)
            .flat_map(|n| (n + 1..dim).map(move |m| (n, m)))
            .find(|&(n, m)| c.get(n, m).norm() < one);
        if let Some((n, m)) = pair {
            let mut v = CVector::from_elem(dim, c0());
            v[n] = cr(T::one());
            v[m] = cr(T::one());
            witnesses.unreachable_state = Some((n, m, FockState::from_vector(&v)?));
        }
        // all-positive amplitudes: the image is a projector only if every
        // |c_{n,m}| = 1
        let psi = CVector::from_elem(dim, cr(T::one() / T::from_usize_lossy(dim).sqrt()));
        let defect = pure_state_defect(op, &psi)?;
        witnesses.non_pure_image = Some((psi, defect));
    }

    Ok(Classification {
        injective,
        surjective_on_states: unimodular,
        bijective_on_states: unimodular,
        preserves_pure_states: unimodular,
        witnesses,
    })
}

/// Another operation that reproduces the trivial phase observable's
/// statistics: `T -> T_{00} |1><1| + T_{11} |0><0| + sum_{n>=2} T_{nn} |n><n|`.
pub fn trivial_swap_operation<T: Real>(t: &FockState<T>) -> Result<FockState<T>> {
    let dim = t.dim();
    if dim < 2 {
        return Err(Error::IndexOutOfRange { index: 1, dim });
    }
    let mut out = CMatrix::from_elem((dim, dim), c0());
    out[[1, 1]] = t.get(0, 0);
    out[[0, 0]] = t.get(1, 1);
    for n in 2..dim {
        out[[n, n]] = t.get(n, n);
    }
    let hermitian = t.is_hermitian();
    Ok(FockState::with_flags(out, hermitian, t.is_state()))
}
