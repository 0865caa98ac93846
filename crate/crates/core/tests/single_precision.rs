// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

use phasecov::density::{estimate_density, DensityEstimator};
use phasecov::observables::probability;
use phasecov::{algebra, sampling, BorelSetF32, PhaseObservableF32, SchurOperationF32};

#[test]
fn f32_pipeline() {
    let mut rng = sampling::rng(5);
    let c = sampling::any_phase_matrix::<f32>(&mut rng, 8);
    let t = sampling::state::<f32>(&mut rng, 8);
    let e = PhaseObservableF32::new(c.clone());
    let p = probability(&e, &t, &BorelSetF32::full()).unwrap();
    assert!((p.raw - 1.0).abs() < 1e-5);
    let curve = estimate_density(&e, &t, &DensityEstimator::exact(), 128).unwrap();
    assert!((curve.integral().re - 1.0).abs() < 1e-5);
    let g = algebra::gram_factorize(&c).unwrap();
    assert!(g.gram().max_abs_diff(c.structure()) < 1e-4);
    let op = SchurOperationF32::new(c);
    assert!(op.kraus().unwrap().resolution_deviation() < 1e-4);
}
