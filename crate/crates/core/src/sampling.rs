// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random fixtures: phase matrices, states and Borel sets.
//!
//! Everything draws from a caller-supplied RNG so that a seed fully
//! determines every randomized check.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{PhaseMatrix, StructureMatrix};
use crate::borel::{BorelSet, PhasePoint};
use crate::fock::FockState;
use crate::linalg::{self, CMatrix, CVector};
use crate::scalar::{c0, Real, C};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn normal_complex<T: Real>(rng: &mut impl Rng) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C::new(T::lit(re), T::lit(im))
}

/// Gaussian vector of length `len`.
pub fn gaussian_vector<T: Real>(rng: &mut impl Rng, len: usize) -> CVector<T> {
    (0..len).map(|_| normal_complex(rng)).collect()
}

/// Uniformly distributed unit vector.
pub fn unit_vector<T: Real>(rng: &mut impl Rng, len: usize) -> CVector<T> {
    loop {
        let v = gaussian_vector::<T>(rng, len);
        let norm = linalg::vector_norm(&v);
        if norm > T::lit(1e-6) {
            return v.mapv(|z| z / norm);
        }
    }
}

/// Gram matrix of `dim` random unit vectors in `C^rank`.
pub fn phase_matrix<T: Real>(rng: &mut impl Rng, dim: usize, rank: usize) -> PhaseMatrix<T> {
    let vectors: Vec<CVector<T>> = (0..dim).map(|_| unit_vector(rng, rank.max(1))).collect();
    let mut g = StructureMatrix::from_gram(&vectors).expect("equal lengths");
    let mut e = g.entries().clone();
    for n in 0..dim {
        e[[n, n]] = crate::scalar::c1();
    }
    g = StructureMatrix::from_entries_unchecked(e);
    PhaseMatrix::assume_valid(g)
}

/// Random phase matrix with rank drawn from `1..=dim`.
pub fn any_phase_matrix<T: Real>(rng: &mut impl Rng, dim: usize) -> PhaseMatrix<T> {
    let rank = rng.random_range(1..=dim);
    phase_matrix(rng, dim, rank)
}

/// Random positive semidefinite Gram matrix (not unit-diagonal) of vectors
/// with Gaussian entries.
pub fn psd_matrix<T: Real>(rng: &mut impl Rng, dim: usize, rank: usize) -> StructureMatrix<T> {
    let vectors: Vec<CVector<T>> = (0..dim).map(|_| gaussian_vector(rng, rank.max(1))).collect();
    StructureMatrix::from_gram(&vectors).expect("equal lengths")
}

/// Arbitrary bounded structure matrix with Gaussian entries.
pub fn structure_matrix<T: Real>(rng: &mut impl Rng, dim: usize) -> StructureMatrix<T> {
    let mut m = CMatrix::from_elem((dim, dim), c0());
    for z in m.iter_mut() {
        *z = normal_complex(rng);
    }
    StructureMatrix::from_entries_unchecked(m)
}

/// Hilbert-Schmidt random density matrix `G G^* / tr(G G^*)`.
pub fn mixed_state<T: Real>(rng: &mut impl Rng, dim: usize) -> FockState<T> {
    let mut g = CMatrix::from_elem((dim, dim), c0());
    for z in g.iter_mut() {
        *z = normal_complex(rng);
    }
    let mut rho = linalg::matmul(&g, &linalg::adjoint(&g));
    let tr = linalg::trace(&rho).re;
    rho.mapv_inplace(|z| z / tr);
    let rho = linalg::hermitian_part(&rho);
    FockState::from_matrix(rho).expect("square")
}

pub fn pure_state<T: Real>(rng: &mut impl Rng, dim: usize) -> FockState<T> {
    FockState::from_vector(&unit_vector(rng, dim)).expect("nonzero")
}

/// Hilbert-Schmidt mixed state or pure state with equal probability.
pub fn state<T: Real>(rng: &mut impl Rng, dim: usize) -> FockState<T> {
    if rng.random_bool(0.5) {
        mixed_state(rng, dim)
    } else {
        pure_state(rng, dim)
    }
}

/// General (non-Hermitian) trace-class operator with Gaussian entries.
pub fn trace_class<T: Real>(rng: &mut impl Rng, dim: usize) -> FockState<T> {
    let mut m = CMatrix::from_elem((dim, dim), c0());
    for z in m.iter_mut() {
        *z = normal_complex(rng);
    }
    FockState::from_matrix(m).expect("square")
}

pub fn phase_point<T: Real>(rng: &mut impl Rng) -> PhasePoint<T> {
    PhasePoint::new(T::lit(rng.random_range(0.0..std::f64::consts::TAU)))
}

/// Union of one to three random intervals.
pub fn borel_set<T: Real>(rng: &mut impl Rng) -> BorelSet<T> {
    let pieces = rng.random_range(1..=3);
    let mut cuts: Vec<f64> = (0..2 * pieces)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    BorelSet::new(cuts.chunks(2).map(|w| (T::lit(w[0]), T::lit(w[1])))).expect("sorted cuts")
}

/// Unit complex numbers `e^{i u_n}` as phases `u_n`.
pub fn phases<T: Real>(rng: &mut impl Rng, dim: usize) -> Vec<T> {
    (0..dim)
        .map(|_| T::lit(rng.random_range(0.0..std::f64::consts::TAU)))
        .collect()
}
