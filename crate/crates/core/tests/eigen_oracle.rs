// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Cross-checks the Jacobi eigensolver against nalgebra.

use nalgebra::{Complex, DMatrix};
use phasecov::linalg::{self, CMatrix, HermitianEigen};
use phasecov::sampling;

fn to_nalgebra(a: &CMatrix<f64>) -> DMatrix<Complex<f64>> {
    let n = a.nrows();
    DMatrix::from_fn(n, n, |i, j| Complex::new(a[[i, j]].re, a[[i, j]].im))
}

#[test]
fn spectra_agree_with_nalgebra() {
    let mut rng = sampling::rng(77);
    for dim in [1, 2, 3, 5, 8, 16, 33, 64] {
        for rank in [1, dim / 2 + 1, dim] {
            let a = sampling::psd_matrix::<f64>(&mut rng, dim, rank);
            let ours = HermitianEigen::new(a.entries());
            let mut theirs: Vec<f64> = to_nalgebra(a.entries())
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .copied()
                .collect();
            theirs.sort_by(|x, y| y.partial_cmp(x).unwrap());
            let scale = theirs[0].abs().max(1.0);
            for (x, y) in ours.values.iter().zip(&theirs) {
                assert!((x - y).abs() < 1e-10 * scale, "dim {dim} rank {rank}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn operator_norm_agrees_with_singular_values() {
    let mut rng = sampling::rng(78);
    for dim in [1, 4, 12, 30] {
        let a = sampling::trace_class::<f64>(&mut rng, dim).into_entries();
        let ours = linalg::operator_norm(&a);
        let theirs = to_nalgebra(&a).singular_values().max();
        assert!((ours - theirs).abs() < 1e-10 * theirs.max(1.0), "{ours} vs {theirs}");
    }
}

#[test]
fn min_eigenvalue_of_indefinite_matrices() {
    let mut rng = sampling::rng(79);
    for dim in [2, 7, 20] {
        let a = linalg::hermitian_part(&sampling::trace_class::<f64>(&mut rng, dim).into_entries());
        let theirs = to_nalgebra(&a).symmetric_eigen().eigenvalues.min();
        assert!((linalg::min_eigenvalue(&a) - theirs).abs() < 1e-10);
    }
}
