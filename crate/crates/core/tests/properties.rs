// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

use phasecov::algebra::{self, EquivDecision, StructureMatrix};
use phasecov::density::{self, DensityEstimator, Subsequence};
use phasecov::linalg::{self, CMatrix};
use phasecov::observables::{
    self, complex_measure, effect, observable_from_single_phase_state, PhaseStateVector,
};
use phasecov::operations::SchurOperation;
use phasecov::scalar::C;
use phasecov::{sampling, BorelSet, FockState, PhaseMatrix, PhaseObservable, PhasePoint};
use proptest::prelude::*;
use std::f64::consts::TAU;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn cr(x: f64) -> C<f64> {
    C::new(x, 0.0)
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn hadamard_algebra_laws(seed in any::<u64>(), dim in 1usize..=16) {
        let mut rng = sampling::rng(seed);
        let a = sampling::structure_matrix::<f64>(&mut rng, dim);
        let b = sampling::structure_matrix::<f64>(&mut rng, dim);
        let c = sampling::structure_matrix::<f64>(&mut rng, dim);
        let ab = a.hadamard(&b).unwrap();
        prop_assert!(ab.max_abs_diff(&b.hadamard(&a).unwrap()) < 1e-15);
        let l = ab.hadamard(&c).unwrap();
        let r = a.hadamard(&b.hadamard(&c).unwrap()).unwrap();
        prop_assert!(l.max_abs_diff(&r) < 1e-14);
        prop_assert_eq!(a.hadamard(&StructureMatrix::canonical(dim)).unwrap(), a.clone());
        prop_assert!(ab.involution().max_abs_diff(&a.involution().hadamard(&b.involution()).unwrap()) < 1e-15);
        prop_assert_eq!(a.involution().involution(), a.clone());
        prop_assert!((a.involution().sup_norm() - a.sup_norm()).abs() < 1e-15);
        prop_assert!(ab.sup_norm() <= a.sup_norm() * b.sup_norm() * (1.0 + 1e-14));
        let aa = a.hadamard(&a.involution()).unwrap();
        prop_assert!((aa.sup_norm() - a.sup_norm().powi(2)).abs() < 1e-13);
    }

    #[test]
    fn schur_products_stay_positive(seed in any::<u64>(), dim in 1usize..=24) {
        let mut rng = sampling::rng(seed);
        let a = sampling::psd_matrix::<f64>(&mut rng, dim, 1 + dim / 2);
        let b = sampling::psd_matrix::<f64>(&mut rng, dim, 1 + dim / 3);
        let p = a.hadamard(&b).unwrap();
        prop_assert!(linalg::min_eigenvalue(p.entries()) >= -1e-9);
        let c = sampling::any_phase_matrix::<f64>(&mut rng, dim);
        let d = sampling::any_phase_matrix::<f64>(&mut rng, dim);
        prop_assert!(PhaseMatrix::validate(c.hadamard(&d).unwrap().into_structure()).is_ok());
    }

    #[test]
    fn factorizations_round_trip(seed in any::<u64>(), dim in 1usize..=64) {
        let mut rng = sampling::rng(seed);
        let c = sampling::any_phase_matrix::<f64>(&mut rng, dim);
        let g = algebra::gram_factorize(&c).unwrap();
        prop_assert!(g.gram().max_abs_diff(c.structure()) < 1e-9);
        let fam = algebra::phase_state_factorize(&c).unwrap();
        let back = StructureMatrix::from_phase_states(fam.members()).unwrap();
        prop_assert!(back.max_abs_diff(c.structure()) < 1e-9);
        prop_assert!(algebra::synthesize_from_family(&fam).structure().max_abs_diff(c.structure()) < 1e-9);
    }

    #[test]
    fn inverse_is_phase_matrix_iff_unimodular(seed in any::<u64>(), dim in 2usize..=12) {
        let mut rng = sampling::rng(seed);
        let u = PhaseMatrix::unimodular(&sampling::phases::<f64>(&mut rng, dim));
        let inv = u.structure().hadamard_inverse().unwrap();
        prop_assert!(algebra::is_canonical_ue(&u));
        prop_assert!(PhaseMatrix::validate(inv).is_ok());

        let c = sampling::phase_matrix::<f64>(&mut rng, dim, dim);
        prop_assert!(!algebra::is_canonical_ue(&c));
        if let Ok(inv) = c.structure().hadamard_inverse() {
            prop_assert!(PhaseMatrix::validate(inv).is_err());
        }
    }

    #[test]
    fn equivalence_is_an_equivalence(seed in any::<u64>(), dim in 1usize..=8) {
        let mut rng = sampling::rng(seed);
        let c = sampling::phase_matrix::<f64>(&mut rng, dim, dim);
        let u1 = PhaseMatrix::unimodular(&sampling::phases::<f64>(&mut rng, dim));
        let u2 = PhaseMatrix::unimodular(&sampling::phases::<f64>(&mut rng, dim));
        let d = c.hadamard(&u1).unwrap();
        let e = d.hadamard(&u2).unwrap();
        prop_assert!(algebra::equiv_phase(&c, &c).unwrap().is_yes());
        prop_assert!(algebra::equiv_phase(&c, &d).unwrap().is_yes());
        prop_assert!(algebra::equiv_phase(&d, &c).unwrap().is_yes());
        prop_assert!(algebra::equiv_phase(&d, &e).unwrap().is_yes());
        match algebra::equiv_phase(&e, &c).unwrap() {
            EquivDecision::Yes { upsilon } => {
                let rebuilt = c.hadamard(&PhaseMatrix::unimodular(&upsilon)).unwrap();
                prop_assert!(rebuilt.structure().max_abs_diff(e.structure()) < 1e-9);
            }
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn order_extremes(seed in any::<u64>(), dim in 1usize..=12) {
        let mut rng = sampling::rng(seed);
        let c = sampling::any_phase_matrix::<f64>(&mut rng, dim);
        prop_assert!(algebra::order_leq(c.structure(), &StructureMatrix::canonical(dim)).unwrap().is_yes());
        prop_assert!(algebra::order_leq(&StructureMatrix::kronecker(dim), c.structure()).unwrap().is_yes());
    }

    #[test]
    fn measures_are_normalized_positive_additive(seed in any::<u64>(), dim in 1usize..=32) {
        let mut rng = sampling::rng(seed);
        let e = PhaseObservable::new(sampling::any_phase_matrix::<f64>(&mut rng, dim));
        let t = sampling::state::<f64>(&mut rng, dim);
        let p = observables::probability(&e, &t, &BorelSet::full()).unwrap();
        prop_assert!((p.raw - 1.0).abs() < 1e-10);

        let x = sampling::borel_set::<f64>(&mut rng);
        let spec = effect(&e, &x).spectrum();
        prop_assert!(spec.iter().all(|&l| (-1e-9..=1.0 + 1e-9).contains(&l)));

        let cuts: Vec<f64> = (0..3).map(|_| sampling::phase_point::<f64>(&mut rng).value()).collect();
        let pieces = x.split_at(&cuts);
        let whole = complex_measure(&e, &t, &x).unwrap();
        let sum = pieces.iter().fold(C::new(0.0, 0.0), |acc, piece| acc + complex_measure(&e, &t, piece).unwrap());
        prop_assert!((whole - sum).norm() < 1e-12);
    }

    #[test]
    fn vanishing_coherence_randomizes(seed in any::<u64>(), dim in 2usize..=10) {
        let mut rng = sampling::rng(seed);
        let c = sampling::any_phase_matrix::<f64>(&mut rng, dim);
        let (n, m) = (0, dim - 1);
        // zero out c_{n,m} while keeping the matrix positive: mix with a
        // matrix that cancels it exactly
        let mut entries = c.structure().entries().clone();
        entries[[n, m]] = cr(0.0);
        entries[[m, n]] = cr(0.0);
        let mut mixed = entries.mapv(|z| z * 0.5);
        for k in 0..dim {
            mixed[[k, k]] = cr(1.0);
        }
        let Ok(e) = PhaseMatrix::validate(StructureMatrix::new(mixed).unwrap()) else {
            return Ok(());
        };
        let e = PhaseObservable::new(e);
        let mut psi = ndarray::Array1::from_elem(dim, cr(0.0));
        psi[n] = sampling::normal_complex(&mut rng);
        psi[m] = sampling::normal_complex(&mut rng);
        let t = FockState::from_vector(&psi).unwrap();
        let x = sampling::borel_set::<f64>(&mut rng);
        let p = observables::probability(&e, &t, &x).unwrap();
        prop_assert!((p.raw - x.length() / TAU).abs() < 1e-12);
    }

    #[test]
    fn phase_state_partial_sums_increase(seed in any::<u64>(), dim in 1usize..=12) {
        let mut rng = sampling::rng(seed);
        let c = sampling::any_phase_matrix::<f64>(&mut rng, dim);
        let fam = algebra::phase_state_factorize(&c).unwrap();
        let t = sampling::state::<f64>(&mut rng, dim);
        let x = sampling::borel_set::<f64>(&mut rng);
        let mut running = CMatrix::from_elem((dim, dim), cr(0.0));
        let mut last = 0.0;
        for f in fam.members() {
            let gom = observable_from_single_phase_state(&PhaseStateVector::new(f.clone()).unwrap());
            running += effect(&gom, &x).entries();
            let value = linalg::trace_product(t.entries(), &running).re;
            prop_assert!(value >= last - 1e-12);
            last = value;
        }
        let full = effect(&c, &x);
        prop_assert!(linalg::max_abs_diff(&running, full.entries()) < 1e-9);
    }

    #[test]
    fn operations_preserve_states(seed in any::<u64>(), dim in 1usize..=16) {
        let mut rng = sampling::rng(seed);
        let c = sampling::any_phase_matrix::<f64>(&mut rng, dim);
        let op = SchurOperation::new(c.clone());
        let t = sampling::state::<f64>(&mut rng, dim);
        let out = op.apply(&t).unwrap();
        prop_assert!((out.trace() - t.trace()).norm() < 1e-12);
        prop_assert!(linalg::min_eigenvalue(out.entries()) >= -1e-9);
        let theta = sampling::phase_point::<f64>(&mut rng);
        let a = op.apply(&t.phase_shift(theta)).unwrap();
        let b = out.phase_shift(theta);
        prop_assert!(linalg::max_abs_diff(a.entries(), b.entries()) < 1e-12);
        let kraus = op.kraus().unwrap();
        prop_assert!(kraus.resolution_deviation() < 1e-9);
        prop_assert!(linalg::max_abs_diff(&kraus.apply(t.entries()), out.entries()) < 1e-9);
        let other = SchurOperation::new(sampling::any_phase_matrix::<f64>(&mut rng, dim));
        let ab = op.compose(&other).unwrap().apply(&t).unwrap();
        let ba = other.compose(&op).unwrap().apply(&t).unwrap();
        let seq = op.apply(&other.apply(&t).unwrap()).unwrap();
        prop_assert!(linalg::max_abs_diff(ab.entries(), ba.entries()) < 1e-15);
        prop_assert!(linalg::max_abs_diff(ab.entries(), seq.entries()) < 1e-10);
        let a = sampling::trace_class::<f64>(&mut rng, dim).into_entries();
        let lhs = linalg::trace_product(t.entries(), &op.apply_dual(&a).unwrap());
        let rhs = linalg::trace_product(out.entries(), &a);
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn density_invariants(seed in any::<u64>(), dim in 1usize..=16, shift in 0usize..256) {
        let mut rng = sampling::rng(seed);
        let e = PhaseObservable::new(sampling::any_phase_matrix::<f64>(&mut rng, dim));
        let t = sampling::state::<f64>(&mut rng, dim);
        let grid = 256;
        let curve = density::estimate_density(&e, &t, &DensityEstimator::exact(), grid).unwrap();
        prop_assert!((curve.integral() - cr(1.0)).norm() < 1e-6);
        prop_assert!(curve.max_imag() < 1e-10);
        prop_assert!(curve.min_real() >= -1e-8);

        let theta0 = TAU * shift as f64 / grid as f64;
        let shifted = t.phase_shift(PhasePoint::new(theta0));
        let moved = density::estimate_density(&e, &shifted, &DensityEstimator::exact(), grid).unwrap();
        for j in 0..grid {
            let src = (j + grid - shift) % grid;
            prop_assert!((moved.values[j] - curve.values[src]).norm() < 1e-10);
        }

        for j in 0..=10 {
            let eps = 0.5f64.powi(j);
            let bound = dim as f64 + 2.0 * dim as f64 * (1.0 - eps) / eps;
            prop_assert!(density::abel_absolute_sum(&e.matrix, eps).unwrap() <= bound + 1e-9);
        }

        let partial = DensityEstimator::PartialSum { subsequence: Subsequence::Explicit(vec![dim + 3]) };
        let via_partial = density::estimate_density(&e, &t, &partial, grid).unwrap();
        prop_assert!(via_partial.max_abs_diff(&curve) < 1e-15);
    }

    #[test]
    fn phase_shift_preserves_spectrum(seed in any::<u64>(), dim in 1usize..=32) {
        let mut rng = sampling::rng(seed);
        let t = sampling::state::<f64>(&mut rng, dim);
        let theta = sampling::phase_point::<f64>(&mut rng);
        let s = t.phase_shift(theta);
        prop_assert!((s.trace() - t.trace()).norm() < 1e-10);
        prop_assert!(linalg::hermitian_deviation(s.entries()) < 1e-10);
        for (a, b) in s.eigenvalues().iter().zip(t.eigenvalues()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn borel_shifts_compose(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let x = sampling::borel_set::<f64>(&mut rng);
        let a = sampling::phase_point::<f64>(&mut rng);
        let b = sampling::phase_point::<f64>(&mut rng);
        let y = x.shift(a);
        prop_assert!((y.length() - x.length()).abs() < 1e-12);
        let back = y.shift(a.negate());
        prop_assert!((back.length() - x.length()).abs() < 1e-12);
        for _ in 0..64 {
            let p: f64 = sampling::phase_point::<f64>(&mut rng).value();
            let close_to_edge = x.intervals().iter().any(|&(lo, hi)| (p - lo).abs() < 1e-9 || (p - hi).abs() < 1e-9);
            if !close_to_edge {
                prop_assert_eq!(back.contains(p), x.contains(p));
                let q = (PhasePoint::new(p) + a + b).value();
                prop_assert_eq!(x.shift(a).shift(b).contains(q), x.shift(a + b).contains(q));
            }
        }
    }
}
