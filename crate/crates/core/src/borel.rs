// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Phase points and finite unions of half-open intervals of `[0, 2pi)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{two_pi, Real};

/// An angle reduced into `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhasePoint<T>(T);

impl<T: Real> PhasePoint<T> {
    pub fn new(theta: T) -> Self {
        Self(reduce_angle(theta))
    }

    pub fn zero() -> Self {
        Self(T::zero())
    }

    pub fn value(self) -> T {
        self.0
    }

    /// The reduced angle of `-theta`.
    pub fn negate(self) -> Self {
        Self::new(-self.0)
    }

}

impl<T: Real> std::ops::Add for PhasePoint<T> {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self::new(self.0 + other.0)
    }
}

impl<T: Real> std::ops::Neg for PhasePoint<T> {
    type Output = Self;

    fn neg(self) -> Self {
        self.negate()
    }
}

/// `theta mod 2pi` in `[0, 2pi)`.
pub fn reduce_angle<T: Real>(theta: T) -> T {
    let tau = two_pi::<T>();
    if theta >= T::zero() && theta < tau {
        return theta;
    }
    let mut r = theta - tau * (theta / tau).floor();
    if r < T::zero() {
        r = r + tau;
    }
    if r >= tau {
        r = r - tau;
    }
    // `r + tau` can round up to exactly tau for tiny negative inputs.
    if r >= tau || r < T::zero() {
        T::zero()
    } else {
        r
    }
}

/// A Borel subset of `[0, 2pi)` given as a finite disjoint union of
/// half-open intervals `[a, b)`.
///
/// Canonical form: sorted by left endpoint, non-empty pieces only, and
/// overlapping or touching intervals merged.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BorelSet<T> {
    intervals: Vec<(T, T)>,
}

impl<T: Real> BorelSet<T> {
    /// Builds the union of the given intervals. Every interval must satisfy
    /// `0 <= a <= b <= 2pi`; empty ones are dropped.
    pub fn new(intervals: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        let tau = two_pi::<T>();
        let mut pieces = Vec::new();
        for (a, b) in intervals {
            if !(a >= T::zero() && b <= tau && a <= b) || !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidInterval {
                    a: a.to_f64_lossy(),
                    b: b.to_f64_lossy(),
                });
            }
            if a < b {
                pieces.push((a, b));
            }
        }
        Ok(Self::canonical(pieces))
    }

    pub fn empty() -> Self {
        Self {
            intervals: Vec::new(),
        }
    }

    pub fn full() -> Self {
        Self {
            intervals: vec![(T::zero(), two_pi())],
        }
    }

    /// `[0, x)` for `x` clamped into `[0, 2pi]`.
    pub fn initial_segment(x: T) -> Self {
        let x = x.max(T::zero()).min(two_pi());
        if x > T::zero() {
            Self {
                intervals: vec![(T::zero(), x)],
            }
        } else {
            Self::empty()
        }
    }

    fn canonical(mut pieces: Vec<(T, T)>) -> Self {
        pieces.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
        let mut merged: Vec<(T, T)> = Vec::with_capacity(pieces.len());
        for (a, b) in pieces {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        Self { intervals: merged }
    }

    pub fn intervals(&self) -> &[(T, T)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Lebesgue measure.
    pub fn length(&self) -> T {
        self.intervals
            .iter()
            .fold(T::zero(), |acc, &(a, b)| acc + (b - a))
    }

    pub fn contains(&self, x: T) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= x && x < b)
    }

    /// `X (+) theta = { x | (x - theta) mod 2pi in X }`: every interval is
    /// translated by theta and split at the wrap point.
    pub fn shift(&self, theta: PhasePoint<T>) -> Self {
        let tau = two_pi::<T>();
        let t = theta.value();
        if t == T::zero() {
            return self.clone();
        }
        let mut pieces = Vec::with_capacity(self.intervals.len() + 1);
        for &(a, b) in &self.intervals {
            let (mut lo, mut hi) = (a + t, b + t);
            if lo >= tau {
                lo = lo - tau;
                hi = hi - tau;
            }
            if hi > tau {
                pieces.push((lo, tau));
                let rest = hi - tau;
                if rest > T::zero() {
                    pieces.push((T::zero(), rest));
                }
            } else {
                pieces.push((lo, hi.min(tau)));
            }
        }
        pieces.retain(|&(a, b)| a < b);
        Self::canonical(pieces)
    }

    /// Splits the set at the given cut points, producing disjoint pieces whose
    /// union is `self`.
    pub fn split_at(&self, cuts: &[T]) -> Vec<Self> {
        let mut cuts: Vec<T> = cuts.to_vec();
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
        let mut out = Vec::new();
        for &(a, b) in &self.intervals {
            let mut lo = a;
            for &c in cuts.iter().filter(|&&c| c > a && c < b) {
                out.push(Self {
                    intervals: vec![(lo, c)],
                });
                lo = c;
            }
            out.push(Self {
                intervals: vec![(lo, b)],
            });
        }
        out
    }
}

/// Translates `X` by theta modulo 2pi.
pub fn shift_borel_set<T: Real>(x: &BorelSet<T>, theta: PhasePoint<T>) -> BorelSet<T> {
    x.shift(theta)
}
