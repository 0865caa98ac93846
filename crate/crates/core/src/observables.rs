// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Covariant phase observables and generalized operator measures.
//!
//! A structure matrix `(d_{n,m})` defines the measure
//! `E(X) = sum_{n,m} d_{n,m} i_{n-m}(X) |n><m|` with
//! `i_k(X) = (2pi)^{-1} int_X e^{ik theta} d theta`. All `i_k` are evaluated
//! in closed form, so additivity and covariance hold to rounding error.

use serde::Serialize;

use crate::algebra::{PhaseMatrix, StructureMatrix};
use crate::borel::{BorelSet, PhasePoint};
use crate::error::{Error, Result};
use crate::fock::{coherent_vector, FockState};
use crate::linalg::{self, CMatrix, CVector};
use crate::sampling;
use crate::scalar::{c0, cis, cr, two_pi, Real, C};
use crate::tolerance::Tolerances;

/// Anything carrying a structure matrix.
pub trait Structured<T: Real> {
    fn structure(&self) -> &StructureMatrix<T>;

    fn dim(&self) -> usize {
        self.structure().dim()
    }
}

impl<T: Real> Structured<T> for StructureMatrix<T> {
    fn structure(&self) -> &StructureMatrix<T> {
        self
    }
}

impl<T: Real> Structured<T> for PhaseMatrix<T> {
    fn structure(&self) -> &StructureMatrix<T> {
        PhaseMatrix::structure(self)
    }
}

/// A covariant phase observable defined by its phase matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseObservable<T: Real> {
    pub matrix: PhaseMatrix<T>,
    pub label: Option<String>,
}

impl<T: Real> PhaseObservable<T> {
    pub fn new(matrix: PhaseMatrix<T>) -> Self {
        Self {
            matrix,
            label: None,
        }
    }

    pub fn canonical(dim: usize) -> Self {
        Self {
            matrix: PhaseMatrix::canonical(dim),
            label: Some("canonical".into()),
        }
    }

    pub fn trivial(dim: usize) -> Self {
        Self {
            matrix: PhaseMatrix::trivial(dim),
            label: Some("trivial".into()),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn as_gom(&self) -> CovariantGOM<T> {
        CovariantGOM {
            matrix: self.matrix.structure().clone(),
            label: self.label.clone(),
            normalized: true,
        }
    }
}

impl<T: Real> Structured<T> for PhaseObservable<T> {
    fn structure(&self) -> &StructureMatrix<T> {
        self.matrix.structure()
    }
}

/// A covariant generalized operator measure.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariantGOM<T: Real> {
    pub matrix: StructureMatrix<T>,
    pub label: Option<String>,
    normalized: bool,
}

impl<T: Real> CovariantGOM<T> {
    pub fn new(matrix: StructureMatrix<T>) -> Self {
        let tol = T::default_tolerances();
        let normalized = matrix.has_unit_diagonal(T::lit(tol.unit_diagonal));
        Self {
            matrix,
            label: None,
            normalized,
        }
    }

    /// `d_{n,n} = 1` for every `n`, i.e. `E([0, 2pi)) = I`.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Certifies the structure matrix as a phase matrix.
    pub fn to_phase_observable(&self) -> Result<PhaseObservable<T>> {
        Ok(PhaseObservable {
            matrix: PhaseMatrix::validate(self.matrix.clone())?,
            label: self.label.clone(),
        })
    }
}

impl<T: Real> Structured<T> for CovariantGOM<T> {
    fn structure(&self) -> &StructureMatrix<T> {
        &self.matrix
    }
}

/// The matrix of `E(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectOperator<T: Real> {
    entries: CMatrix<T>,
}

impl<T: Real> EffectOperator<T> {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix<T> {
        self.entries
    }

    /// Eigenvalues of the Hermitian part, descending.
    pub fn spectrum(&self) -> Vec<T> {
        linalg::HermitianEigen::new(&self.entries).values
    }
}

/// `i_k(X) = (2pi)^{-1} int_X e^{ik theta} d theta`.
///
/// Per interval, `(e^{ikb} - e^{ika}) / (2 pi i k)` is evaluated as
/// `e^{ik(a+b)/2} sin(k(b-a)/2) / (pi k)`, which avoids cancellation for
/// short intervals.
pub fn fourier_coefficient<T: Real>(k: i64, x: &BorelSet<T>) -> C<T> {
    if k == 0 {
        return cr(x.length() / two_pi());
    }
    let kf = T::from_i64(k).expect("lag representable");
    let half = T::lit(0.5);
    let mut acc = c0();
    for &(a, b) in x.intervals() {
        let mid = (a + b) * half;
        let amp = (kf * (b - a) * half).sin() / (T::PI() * kf);
        acc = acc + cis(kf * mid) * amp;
    }
    acc
}

/// `i_k(X)` for `k = -(dim-1) ..= dim-1`, indexed by `k + dim - 1`.
pub(crate) fn fourier_table<T: Real>(dim: usize, x: &BorelSet<T>) -> Vec<C<T>> {
    let max = dim as i64 - 1;
    (-max..=max).map(|k| fourier_coefficient(k, x)).collect()
}

/// `E(X)_{n,m} = d_{n,m} i_{n-m}(X)`.
pub fn effect<T: Real>(e: &impl Structured<T>, x: &BorelSet<T>) -> EffectOperator<T> {
    let d = e.structure();
    let dim = d.dim();
    let table = fourier_table(dim, x);
    let mut entries = CMatrix::from_elem((dim, dim), c0());
    for n in 0..dim {
        for m in 0..dim {
            entries[[n, m]] = d.get(n, m) * table[n + dim - 1 - m];
        }
    }
    EffectOperator { entries }
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// `tr(T E(X)) = sum_{n,m} T_{m,n} d_{n,m} i_{n-m}(X)`.
pub fn complex_measure<T: Real>(
    e: &impl Structured<T>,
    state: &FockState<T>,
    x: &BorelSet<T>,
) -> Result<C<T>> {
    let d = e.structure();
    let dim = d.dim();
    check_dims(dim, state.dim())?;
    let table = fourier_table(dim, x);
    let mut acc = c0();
    for n in 0..dim {
        for m in 0..dim {
            acc = acc + state.get(m, n) * d.get(n, m) * table[n + dim - 1 - m];
        }
    }
    Ok(acc)
}

/// A probability clamped into `[0, 1]` together with the unclamped value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Probability<T> {
    pub value: T,
    pub raw: T,
    /// Imaginary part of `tr(T E(X))`; float noise only.
    pub imag: T,
}

pub fn probability<T: Real>(
    e: &PhaseObservable<T>,
    state: &FockState<T>,
    x: &BorelSet<T>,
) -> Result<Probability<T>> {
    probability_with(e, state, x, &T::default_tolerances())
}

/// `p(X) = tr(T E(X))` for a state `T`. Values within
/// `tol.probability_range` of `[0, 1]` are clamped; anything further out is
/// an error.
pub fn probability_with<T: Real>(
    e: &PhaseObservable<T>,
    state: &FockState<T>,
    x: &BorelSet<T>,
    tol: &Tolerances,
) -> Result<Probability<T>> {
    if !state.is_state() {
        return Err(Error::NotAState(
            "probability needs a positive trace-one operator; use complex_measure".into(),
        ));
    }
    let z = complex_measure(e, state, x)?;
    let slack = T::lit(tol.probability_range);
    if z.re < -slack || z.re > T::one() + slack || z.im.abs() > slack {
        return Err(Error::ProbabilityOutOfRange {
            raw: z.re.to_f64_lossy(),
            imag: z.im.to_f64_lossy(),
        });
    }
    Ok(Probability {
        value: z.re.max(T::zero()).min(T::one()),
        raw: z.re,
        imag: z.im,
    })
}

/// Value of the density of `X -> [E(X)](phi, psi)` at theta:
/// `sum_{n,m} d_{n,m} e^{i(n-m)theta} <phi|n><m|psi>`.
pub fn density_function<T: Real>(
    e: &impl Structured<T>,
    phi: &CVector<T>,
    psi: &CVector<T>,
    theta: PhasePoint<T>,
) -> Result<C<T>> {
    let d = e.structure();
    let dim = d.dim();
    check_dims(dim, phi.len())?;
    check_dims(dim, psi.len())?;
    let waves: Vec<C<T>> = (0..dim)
        .map(|n| cis(T::from_usize_lossy(n) * theta.value()))
        .collect();
    let mut acc = c0();
    for n in 0..dim {
        let left = phi[n].conj() * waves[n];
        for m in 0..dim {
            acc = acc + d.get(n, m) * left * waves[m].conj() * psi[m];
        }
    }
    Ok(acc)
}

/// Phase-state coefficients `<n|F)` with `sup |<n|F)| <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseStateVector<T: Real>(CVector<T>);

impl<T: Real> PhaseStateVector<T> {
    pub fn new(coeffs: CVector<T>) -> Result<Self> {
        let bound = T::one() + T::lit(T::default_tolerances().unit_diagonal);
        if coeffs.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if let Some((index, z)) = coeffs.iter().enumerate().find(|(_, z)| !(z.norm() <= bound)) {
            return Err(Error::UnboundedPhaseState {
                index,
                modulus: z.norm().to_f64_lossy(),
            });
        }
        Ok(Self(coeffs))
    }

    /// `|F) = sum_n e^{i u_n} |n>`.
    pub fn from_phases(upsilon: &[T]) -> Self {
        Self(upsilon.iter().map(|&u| cis(u)).collect())
    }

    pub fn coeffs(&self) -> &CVector<T> {
        &self.0
    }
}

/// `E_F` with structure matrix `<n|F)(F|m>`; normalized exactly when every
/// coefficient is unimodular.
pub fn observable_from_single_phase_state<T: Real>(f: &PhaseStateVector<T>) -> CovariantGOM<T> {
    let tol = T::default_tolerances();
    let matrix = StructureMatrix::from_phase_states(std::slice::from_ref(&f.0)).expect("nonempty");
    let unimodular = f
        .0
        .iter()
        .all(|z| (z.norm() - T::one()).abs() <= T::lit(tol.unimodular));
    let mut gom = CovariantGOM::new(matrix);
    gom.normalized = unimodular;
    gom
}

/// Result of [`check_covariance`].
#[derive(Debug, Clone, Serialize)]
pub struct CovarianceReport {
    pub trials: usize,
    pub seed: u64,
    /// `max |mu(R(-theta) T R(-theta)^*, X) - mu(T, X (+) theta)|` over random states.
    pub max_discrepancy: f64,
    /// `max |mu(|z e^{-i alpha}>, X) - mu(|z>, X (+) alpha)|` over coherent states.
    pub max_coherent_discrepancy: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub const COVARIANCE_TOLERANCE: f64 = 1e-10;

/// Randomized check of phase-shift covariance for a structure matrix.
pub fn check_covariance<T: Real>(
    e: &impl Structured<T>,
    trials: usize,
    seed: u64,
) -> CovarianceReport {
    let d = e.structure();
    check_covariance_of(d.dim(), trials, seed, |state, x| {
        complex_measure(d, state, x).expect("dimensions agree")
    })
}

/// Covariance check for an arbitrary sesquilinear-measure evaluator
/// `(T, X) -> mu_T(X)` on states of the given dimension.
pub fn check_covariance_of<T: Real>(
    dim: usize,
    trials: usize,
    seed: u64,
    measure: impl Fn(&FockState<T>, &BorelSet<T>) -> C<T>,
) -> CovarianceReport {
    let mut rng = sampling::rng(seed);
    let mut max_state = 0.0f64;
    let mut max_coherent = 0.0f64;
    for _ in 0..trials {
        let theta = sampling::phase_point::<T>(&mut rng);
        let x = sampling::borel_set::<T>(&mut rng);
        let state = sampling::state::<T>(&mut rng, dim);
        let lhs = measure(&state.phase_shift(theta.negate()), &x);
        let rhs = measure(&state, &x.shift(theta));
        max_state = max_state.max((lhs - rhs).norm().to_f64_lossy());

        // [E(X)](|z e^{-i alpha}>) = [E(X (+) alpha)](|z>)
        let alpha = sampling::phase_point::<T>(&mut rng);
        let z = sampling::normal_complex::<T>(&mut rng);
        let rotated = z * cis(-alpha.value());
        let lhs = measure(&coherent_state(rotated, dim), &x);
        let rhs = measure(&coherent_state(z, dim), &x.shift(alpha));
        max_coherent = max_coherent.max((lhs - rhs).norm().to_f64_lossy());
    }
    let passed = max_state < COVARIANCE_TOLERANCE && max_coherent < COVARIANCE_TOLERANCE;
    CovarianceReport {
        trials,
        seed,
        max_discrepancy: max_state,
        max_coherent_discrepancy: max_coherent,
        tolerance: COVARIANCE_TOLERANCE,
        passed,
    }
}

fn coherent_state<T: Real>(z: C<T>, dim: usize) -> FockState<T> {
    let v = coherent_vector(z, dim).expect("dim >= 1");
    FockState::from_vector(&v).expect("nonzero vacuum component")
}
