// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Phase matrices: positive semidefinite structure matrices with unit
//! diagonal, and their Gram and phase-state factorizations.

use std::fmt;

use serde::Serialize;

use super::StructureMatrix;
use crate::error::{Error, Result};
use crate::linalg::{self, CVector, HermitianEigen};
use crate::scalar::{c0, c1, cr, Real, C};
use crate::tolerance::Tolerances;

/// One violated phase-matrix invariant.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum Failure {
    Hermitian { max_deviation: f64, tolerance: f64 },
    UnitDiagonal { index: usize, value: [f64; 2], deviation: f64, tolerance: f64 },
    PositiveSemidefinite { min_eigenvalue: f64, threshold: f64 },
    EntryBound { position: (usize, usize), modulus: f64, bound: f64 },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Hermitian { max_deviation, .. } => {
                write!(f, "not Hermitian (max |d_nm - conj d_mn| = {max_deviation:e})")
            }
            Failure::UnitDiagonal { index, deviation, .. } => {
                write!(f, "unit diagonal violated at {index} (|d_nn - 1| = {deviation:e})")
            }
            Failure::PositiveSemidefinite { min_eigenvalue, .. } => {
                write!(f, "not positive semidefinite (min eigenvalue {min_eigenvalue:e})")
            }
            Failure::EntryBound { position, modulus, .. } => {
                write!(f, "entry {position:?} has modulus {modulus} > 1")
            }
        }
    }
}

/// Result of checking a structure matrix against the phase-matrix
/// invariants. Empty when the matrix is valid.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnosis {
    pub failures: Vec<Failure>,
    /// Smallest eigenvalue of the Hermitian part, when computed.
    pub min_eigenvalue: Option<f64>,
}

impl Diagnosis {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.failures.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks every invariant and reports all failures.
pub fn diagnose<T: Real>(m: &StructureMatrix<T>, tol: &Tolerances) -> Diagnosis {
    let dim = m.dim();
    let mut failures = Vec::new();

    let herm = linalg::hermitian_deviation(m.entries());
    let hermitian = herm <= T::lit(tol.hermitian);
    if !hermitian {
        failures.push(Failure::Hermitian {
            max_deviation: herm.to_f64_lossy(),
            tolerance: tol.hermitian,
        });
    }

    for n in 0..dim {
        let d = m.get(n, n);
        let dev = (d - c1()).norm();
        if !(dev <= T::lit(tol.unit_diagonal)) {
            failures.push(Failure::UnitDiagonal {
                index: n,
                value: [d.re.to_f64_lossy(), d.im.to_f64_lossy()],
                deviation: dev.to_f64_lossy(),
                tolerance: tol.unit_diagonal,
            });
        }
    }

    let mut min_eigenvalue = None;
    if hermitian {
        let min = linalg::min_eigenvalue(m.entries());
        let threshold = -tol.psd_per_dim * dim as f64;
        min_eigenvalue = Some(min.to_f64_lossy());
        if !(min >= T::lit(threshold)) {
            failures.push(Failure::PositiveSemidefinite {
                min_eigenvalue: min.to_f64_lossy(),
                threshold,
            });
        }
    }

    let bound = T::one() + T::lit(tol.unit_diagonal);
    let mut worst: Option<((usize, usize), T)> = None;
    for (ix, z) in m.entries().indexed_iter() {
        let r = z.norm();
        if !(r <= bound) && worst.is_none_or(|(_, w)| r > w) {
            worst = Some((ix, r));
        }
    }
    if let Some((position, modulus)) = worst {
        failures.push(Failure::EntryBound {
            position,
            modulus: modulus.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }

    Diagnosis {
        failures,
        min_eigenvalue,
    }
}

/// A certified phase matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMatrix<T: Real> {
    inner: StructureMatrix<T>,
}

impl<T: Real> PhaseMatrix<T> {
    pub fn validate(m: StructureMatrix<T>) -> Result<Self> {
        Self::validate_with(m, &T::default_tolerances())
    }

    pub fn validate_with(m: StructureMatrix<T>, tol: &Tolerances) -> Result<Self> {
        let diagnosis = diagnose(&m, tol);
        if diagnosis.is_valid() {
            Ok(Self { inner: m })
        } else {
            Err(Error::InvalidPhaseMatrix(diagnosis))
        }
    }

    pub(crate) fn assume_valid(inner: StructureMatrix<T>) -> Self {
        Self { inner }
    }

    /// All ones.
    pub fn canonical(dim: usize) -> Self {
        Self::assume_valid(StructureMatrix::canonical(dim))
    }

    /// The identity matrix `delta_{n,m}`.
    pub fn trivial(dim: usize) -> Self {
        Self::assume_valid(StructureMatrix::kronecker(dim))
    }

    /// `e^{i(u_n - u_m)}`: the canonical matrix up to unitary equivalence.
    pub fn unimodular(upsilon: &[T]) -> Self {
        Self::assume_valid(StructureMatrix::unimodular(upsilon))
    }

    /// Gram matrix of unit vectors.
    pub fn from_unit_vectors(vectors: &[CVector<T>]) -> Result<Self> {
        Self::validate(StructureMatrix::from_gram(vectors)?)
    }

    pub fn structure(&self) -> &StructureMatrix<T> {
        &self.inner
    }

    pub fn into_structure(self) -> StructureMatrix<T> {
        self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn get(&self, n: usize, m: usize) -> C<T> {
        self.inner.get(n, m)
    }

    /// Phase matrices are closed under the Hadamard product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        Ok(Self::assume_valid(self.inner.hadamard(&other.inner)?))
    }

    /// Phase matrices are closed under entrywise conjugation.
    pub fn involution(&self) -> Self {
        Self::assume_valid(self.inner.involution())
    }
}

pub fn validate_phase_matrix<T: Real>(m: &StructureMatrix<T>) -> Result<PhaseMatrix<T>> {
    PhaseMatrix::validate(m.clone())
}

pub fn validate_phase_matrix_with<T: Real>(
    m: &StructureMatrix<T>,
    tol: &Tolerances,
) -> Result<PhaseMatrix<T>> {
    PhaseMatrix::validate_with(m.clone(), tol)
}

/// Unit vectors `psi_n` with `<psi_n|psi_m> = c_{n,m}`.
#[derive(Debug, Clone)]
pub struct GramFactorization<T: Real> {
    pub vectors: Vec<CVector<T>>,
}

impl<T: Real> GramFactorization<T> {
    /// Length of each vector (the numerical rank of the phase matrix).
    pub fn rank(&self) -> usize {
        self.vectors.first().map_or(0, |v| v.len())
    }

    pub fn gram(&self) -> StructureMatrix<T> {
        StructureMatrix::from_gram(&self.vectors).expect("vectors share a length")
    }
}

/// Phase states `|F_k)` with `sum_k |<n|F_k)|^2 = 1` for every `n`.
#[derive(Debug, Clone)]
pub struct PhaseStateFamily<T: Real> {
    members: Vec<CVector<T>>,
}

impl<T: Real> PhaseStateFamily<T> {
    pub fn new(members: Vec<CVector<T>>) -> Result<Self> {
        Self::new_with(members, &T::default_tolerances())
    }

    pub fn new_with(members: Vec<CVector<T>>, tol: &Tolerances) -> Result<Self> {
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
        let bound = T::one() + T::lit(tol.unit_diagonal);
        for f in &members {
            if let Some((index, z)) = f.iter().enumerate().find(|(_, z)| !(z.norm() <= bound)) {
                return Err(Error::UnboundedPhaseState {
                    index,
                    modulus: z.norm().to_f64_lossy(),
                });
            }
        }
        for n in 0..dim {
            let s = column_weight(&members, n);
            if !((s - T::one()).abs() <= T::lit(tol.normalization)) {
                return Err(Error::Normalization {
                    column: n,
                    value: s.to_f64_lossy(),
                });
            }
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[CVector<T>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].len()
    }
}

fn column_weight<T: Real>(members: &[CVector<T>], n: usize) -> T {
    members.iter().fold(T::zero(), |acc, f| acc + f[n].norm_sqr())
}

/// Eigendecomposition with eigenvalues clipped at zero and numerically null
/// directions dropped.
fn positive_spectrum<T: Real>(c: &PhaseMatrix<T>) -> (HermitianEigen<T>, usize) {
    let eig = HermitianEigen::new(c.structure().entries());
    let dim = c.dim();
    let cutoff = eig.max().max(T::zero()) * T::epsilon() * T::from_usize_lossy(dim.max(1));
    let rank = eig.values.iter().take_while(|&&l| l > cutoff).count().max(1);
    (eig, rank)
}

pub fn gram_factorize<T: Real>(c: &PhaseMatrix<T>) -> Result<GramFactorization<T>> {
    gram_factorize_with(c, &T::default_tolerances())
}

/// `psi_n[j] = sqrt(lambda_j) conj(V_{n j})`, so that
/// `<psi_n|psi_m> = sum_j lambda_j V_{nj} conj(V_{mj}) = c_{n,m}`.
pub fn gram_factorize_with<T: Real>(
    c: &PhaseMatrix<T>,
    tol: &Tolerances,
) -> Result<GramFactorization<T>> {
    let (eig, rank) = positive_spectrum(c);
    let dim = c.dim();
    let mut vectors = Vec::with_capacity(dim);
    for n in 0..dim {
        let mut psi = CVector::from_elem(rank, c0());
        for j in 0..rank {
            psi[j] = eig.vectors[[n, j]].conj() * eig.values[j].max(T::zero()).sqrt();
        }
        let norm = linalg::vector_norm(&psi);
        if (norm - T::one()).abs() > T::lit(tol.renormalize) {
            return Err(Error::NonUnitColumn {
                index: n,
                norm: norm.to_f64_lossy(),
            });
        }
        psi.mapv_inplace(|z| z / norm);
        vectors.push(psi);
    }
    let out = GramFactorization { vectors };
    let residual = out.gram().max_abs_diff(c.structure());
    if !(residual <= T::lit(tol.residual)) {
        return Err(Error::Factorization {
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(out)
}

pub fn phase_state_factorize<T: Real>(c: &PhaseMatrix<T>) -> Result<PhaseStateFamily<T>> {
    phase_state_factorize_with(c, &T::default_tolerances())
}

/// `|F_k) = sqrt(lambda_k) v_k` for the eigenpairs of `C` in descending order.
pub fn phase_state_factorize_with<T: Real>(
    c: &PhaseMatrix<T>,
    tol: &Tolerances,
) -> Result<PhaseStateFamily<T>> {
    let (eig, rank) = positive_spectrum(c);
    let members: Vec<CVector<T>> = (0..rank)
        .map(|k| {
            let s = eig.values[k].max(T::zero()).sqrt();
            eig.vector(k).mapv(|z| z * s)
        })
        .collect();
    let back = StructureMatrix::from_phase_states(&members)?;
    let residual = back.max_abs_diff(c.structure());
    if !(residual <= T::lit(tol.residual)) {
        return Err(Error::Factorization {
            residual: residual.to_f64_lossy(),
        });
    }
    PhaseStateFamily::new_with(members, tol)
}

/// `sum_k |F_k)(F_k|`.
///
/// Column normalization is only required to hold within the family
/// tolerance; the result is rescaled by `D^{-1/2} C D^{-1/2}` with
/// `D = diag(C)`, a congruence that keeps it positive semidefinite and makes
/// the diagonal exactly one.
pub fn synthesize_from_family<T: Real>(family: &PhaseStateFamily<T>) -> PhaseMatrix<T> {
    let raw = StructureMatrix::from_phase_states(family.members()).expect("validated family");
    let dim = raw.dim();
    let scale: Vec<T> = (0..dim).map(|n| raw.get(n, n).re.sqrt()).collect();
    let mut entries = raw.entries().clone();
    for n in 0..dim {
        for m in 0..dim {
            entries[[n, m]] = if n == m {
                c1()
            } else {
                entries[[n, m]] / (scale[n] * scale[m])
            };
        }
    }
    PhaseMatrix::assume_valid(StructureMatrix::from_entries_unchecked(entries))
}

pub fn is_canonical_ue<T: Real>(c: &PhaseMatrix<T>) -> bool {
    is_canonical_ue_with(c, &T::default_tolerances())
}

/// All entries unimodular: `C = (e^{i(u_n - u_m)})`.
pub fn is_canonical_ue_with<T: Real>(c: &PhaseMatrix<T>, tol: &Tolerances) -> bool {
    let t = T::lit(tol.unimodular);
    c.structure()
        .entries()
        .iter()
        .all(|z| (z.norm() - T::one()).abs() <= t)
}

pub fn convex_combine<T: Real>(matrices: &[PhaseMatrix<T>], weights: &[T]) -> Result<PhaseMatrix<T>> {
    convex_combine_with(matrices, weights, &T::default_tolerances())
}

pub fn convex_combine_with<T: Real>(
    matrices: &[PhaseMatrix<T>],
    weights: &[T],
    tol: &Tolerances,
) -> Result<PhaseMatrix<T>> {
    if matrices.is_empty() {
        return Err(Error::InvalidWeights("no matrices given".into()));
    }
    if matrices.len() != weights.len() {
        return Err(Error::InvalidWeights(format!(
            "{} matrices but {} weights",
            matrices.len(),
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= T::zero())) {
        return Err(Error::InvalidWeights(format!("negative weight {w}")));
    }
    let total = weights.iter().fold(T::zero(), |acc, w| acc + *w);
    if !((total - T::one()).abs() <= T::lit(tol.weights)) {
        return Err(Error::InvalidWeights(format!("weights sum to {total}")));
    }
    let dim = matrices[0].dim();
    if let Some(bad) = matrices.iter().find(|m| m.dim() != dim) {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: bad.dim(),
        });
    }
    let mut entries = linalg::CMatrix::from_elem((dim, dim), c0());
    for (m, &w) in matrices.iter().zip(weights) {
        entries.zip_mut_with(m.structure().entries(), |acc, z| *acc = *acc + *z * w);
    }
    for n in 0..dim {
        entries[[n, n]] = cr(T::one());
    }
    Ok(PhaseMatrix::assume_valid(StructureMatrix::from_entries_unchecked(entries)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn named_matrices_validate() {
        assert!(validate_phase_matrix(&StructureMatrix::<f64>::canonical(5)).is_ok());
        assert!(validate_phase_matrix(&StructureMatrix::<f64>::kronecker(5)).is_ok());
    }

    #[test]
    fn large_off_diagonal_fails_psd() {
        let m = StructureMatrix::new(array![[cr(1.0), cr(1.5)], [cr(1.5), cr(1.0)]]).unwrap();
        let Err(Error::InvalidPhaseMatrix(d)) = validate_phase_matrix(&m) else {
            panic!("should fail");
        };
        assert!(d
            .failures
            .iter()
            .any(|f| matches!(f, Failure::PositiveSemidefinite { min_eigenvalue, .. } if (*min_eigenvalue + 0.5).abs() < 1e-12)));
        assert!(d.failures.iter().any(|f| matches!(f, Failure::EntryBound { .. })));
    }

    #[test]
    fn each_failure_reported_distinctly() {
        let m = StructureMatrix::new(array![[cr(0.9), cr(0.0)], [cr(0.0), cr(1.0)]]).unwrap();
        let d = diagnose(&m, &Tolerances::default());
        assert_eq!(d.failures.len(), 1);
        assert!(matches!(d.failures[0], Failure::UnitDiagonal { index: 0, .. }));

        let m = StructureMatrix::new(array![[cr(1.0), C::new(0.0, 0.5)], [C::new(0.0, 0.5), cr(1.0)]])
            .unwrap();
        let d = diagnose(&m, &Tolerances::default());
        assert!(matches!(d.failures[0], Failure::Hermitian { .. }));
        assert!(d.min_eigenvalue.is_none());
    }

    #[test]
    fn canonical_factorizations() {
        let c = PhaseMatrix::<f64>::canonical(6);
        let g = gram_factorize(&c).unwrap();
        assert_eq!(g.rank(), 1);
        for psi in &g.vectors {
            assert!((psi[0] - c1()).norm() < 1e-13);
        }
        let f = phase_state_factorize(&c).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f.members()[0].iter().all(|z| (z - c1()).norm() < 1e-13));
    }

    #[test]
    fn trivial_factorizations() {
        let c = PhaseMatrix::<f64>::trivial(4);
        let g = gram_factorize(&c).unwrap();
        for (n, psi) in g.vectors.iter().enumerate() {
            for (j, z) in psi.iter().enumerate() {
                let expect = if n == j { 1.0 } else { 0.0 };
                assert!((z - cr(expect)).norm() < 1e-15);
            }
        }
        let f = phase_state_factorize(&c).unwrap();
        assert_eq!(f.len(), 4);
        for (k, member) in f.members().iter().enumerate() {
            for (n, z) in member.iter().enumerate() {
                assert_eq!(*z, cr(if n == k { 1.0 } else { 0.0 }));
            }
        }
    }

    #[test]
    fn mixture_factorization() {
        let c = convex_combine(
            &[PhaseMatrix::<f64>::canonical(3), PhaseMatrix::trivial(3)],
            &[0.5, 0.5],
        )
        .unwrap();
        for n in 0..3 {
            for m in 0..3 {
                let expect = if n == m { 1.0 } else { 0.5 };
                assert!((c.get(n, m) - cr(expect)).norm() < 1e-15);
            }
        }
        assert!(linalg::min_eigenvalue(c.structure().entries()) > 0.49);
        let f = phase_state_factorize(&c).unwrap();
        assert_eq!(f.len(), 3);
        let back = synthesize_from_family(&f);
        assert!(back.structure().max_abs_diff(c.structure()) < 1e-9);
    }

    #[test]
    fn synthesize_examples() {
        let ups = [0.0, 1.0, 2.5, 4.0];
        let f: CVector<f64> = ups.iter().map(|&u| crate::scalar::cis(u)).collect();
        let fam = PhaseStateFamily::new(vec![f]).unwrap();
        let c = synthesize_from_family(&fam);
        assert!(c.structure().max_abs_diff(&StructureMatrix::unimodular(&ups)) < 1e-15);

        let basis: Vec<CVector<f64>> = (0..3)
            .map(|k| (0..3).map(|n| cr(if n == k { 1.0 } else { 0.0 })).collect())
            .collect();
        let c = synthesize_from_family(&PhaseStateFamily::new(basis).unwrap());
        assert_eq!(c, PhaseMatrix::trivial(3));
    }

    #[test]
    fn family_normalization_error_names_column() {
        let bad = vec![array![cr(1.0), cr(0.5), cr(1.0)]];
        match PhaseStateFamily::new(bad) {
            Err(Error::Normalization { column, .. }) => assert_eq!(column, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            PhaseStateFamily::new(vec![array![cr(2.0)]]),
            Err(Error::UnboundedPhaseState { .. })
        ));
    }

    #[test]
    fn canonical_ue() {
        assert!(is_canonical_ue(&PhaseMatrix::<f64>::canonical(3)));
        assert!(is_canonical_ue(&PhaseMatrix::<f64>::unimodular(&[0.1, 2.0, 5.0])));
        assert!(!is_canonical_ue(&PhaseMatrix::<f64>::trivial(3)));
    }

    #[test]
    fn convex_weights() {
        let a = PhaseMatrix::<f64>::unimodular(&[0.0, 1.0]);
        let b = PhaseMatrix::<f64>::trivial(2);
        assert_eq!(convex_combine(&[a.clone(), b.clone()], &[1.0, 0.0]).unwrap(), a);
        assert!(matches!(
            convex_combine(&[a.clone(), b.clone()], &[0.3, 0.8]),
            Err(Error::InvalidWeights(_))
        ));
        assert!(convex_combine(&[a.clone(), b], &[1.2, -0.2]).is_err());
        assert!(convex_combine(&[a, PhaseMatrix::trivial(3)], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn involution_preserves_phase_matrices() {
        let m = PhaseMatrix::<f64>::unimodular(&[0.3, 1.1, 2.0]);
        let conj = validate_phase_matrix(m.involution().structure()).unwrap();
        assert_eq!(conj.involution(), m);
    }
}
