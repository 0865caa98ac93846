// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Library-wide numerical thresholds.
//!
//! Every comparison against zero or one in the crate goes through a
//! [`Tolerances`] value. The defaults are tuned for `f64`; each field can be
//! overridden by name (see [`Tolerances::set`]), which is what the CLI's
//! `--tol KEY=VAL` flag does.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Hermiticity of phase matrices and states.
    pub hermitian: f64,
    /// PSD test for phase matrices: min eigenvalue >= -psd_per_dim * dim.
    pub psd_per_dim: f64,
    /// PSD test for states, relative to the largest eigenvalue modulus.
    pub state_psd_rel: f64,
    /// |trace - 1| for states.
    pub trace: f64,
    /// |d_nn - 1| for phase matrices and entrywise modulus bound slack.
    pub unit_diagonal: f64,
    /// Entries at or below this modulus count as exact zeros.
    pub zero: f64,
    /// Entries above this modulus are significantly nonzero.
    pub significant: f64,
    /// Modulus-one test used for unimodularity and equivalence checks.
    pub unimodular: f64,
    /// Phase-state column normalization.
    pub normalization: f64,
    /// Maximal allowed column-norm repair inside factorizations.
    pub renormalize: f64,
    /// Reconstruction residual above which a factorization fails.
    pub residual: f64,
    /// Weights of a convex combination must sum to one within this.
    pub weights: f64,
    /// Probabilities outside [-x, 1 + x] raise instead of being clamped.
    pub probability_range: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            psd_per_dim: 1e-10,
            state_psd_rel: 1e-10,
            trace: 1e-10,
            unit_diagonal: 1e-12,
            zero: 1e-12,
            significant: 1e-9,
            unimodular: 1e-9,
            normalization: 1e-9,
            renormalize: 1e-9,
            residual: 1e-8,
            weights: 1e-12,
            probability_range: 1e-8,
        }
    }
}

impl Tolerances {
    /// Defaults loosened to the resolution of `f32` arithmetic.
    pub fn single_precision() -> Self {
        Self {
            hermitian: 1e-5,
            psd_per_dim: 1e-5,
            state_psd_rel: 1e-5,
            trace: 1e-5,
            unit_diagonal: 1e-5,
            zero: 1e-6,
            significant: 1e-4,
            unimodular: 1e-4,
            normalization: 1e-4,
            renormalize: 1e-4,
            residual: 1e-3,
            weights: 1e-5,
            probability_range: 1e-3,
        }
    }

    pub const KEYS: [&'static str; 13] = [
        "hermitian",
        "psd_per_dim",
        "state_psd_rel",
        "trace",
        "unit_diagonal",
        "zero",
        "significant",
        "unimodular",
        "normalization",
        "renormalize",
        "residual",
        "weights",
        "probability_range",
    ];

    /// Overrides a single threshold by its field name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::InvalidTolerance {
                key: key.to_string(),
                value,
            });
        }
        let slot = match key {
            "hermitian" => &mut self.hermitian,
            "psd_per_dim" => &mut self.psd_per_dim,
            "state_psd_rel" => &mut self.state_psd_rel,
            "trace" => &mut self.trace,
            "unit_diagonal" => &mut self.unit_diagonal,
            "zero" => &mut self.zero,
            "significant" => &mut self.significant,
            "unimodular" => &mut self.unimodular,
            "normalization" => &mut self.normalization,
            "renormalize" => &mut self.renormalize,
            "residual" => &mut self.residual,
            "weights" => &mut self.weights,
            "probability_range" => &mut self.probability_range,
            _ => {
                return Err(Error::InvalidTolerance {
                    key: key.to_string(),
                    value,
                })
            }
        };
        *slot = value;
        Ok(())
    }
}
