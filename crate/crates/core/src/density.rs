// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Densities of phase probability measures with respect to `d theta / 2pi`.
//!
//! At truncation every estimator is a weighted trigonometric polynomial
//! `g(theta) = sum_{n,m} T_{m,n} c_{n,m} e^{i(n-m)theta} w_{n-m}`:
//!
//! * partial sums over `n, m <= n_k` along a subsequence (`w = 1` inside
//!   the cutoff),
//! * the difference-quotient kernel `w_k = (e^{ik eps} - 1)/(ik eps)`,
//! * the Abel kernel `w_k = (1 - eps)^{|k|}`.

use std::io::{self, Write};

use serde::Serialize;

use crate::algebra::PhaseMatrix;
use crate::borel::{BorelSet, PhasePoint};
use crate::error::{Error, Result};
use crate::fock::{FockState, FourStateDecomposition};
use crate::linalg::{self, CMatrix};
use crate::observables::{complex_measure, PhaseObservable};
use crate::scalar::{c0, c1, cis, cr, two_pi, Real, C};

/// The two summation kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// `f1_k(eps) = (e^{ik eps} - 1)/(ik eps)`, `eps in (0, 2pi)`.
    Kernel1,
    /// `f2_k(eps) = (1 - eps)^{|k|}`, `eps in (0, 1]`.
    Kernel2,
}

impl KernelKind {
    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Kernel1 => "kernel1",
            KernelKind::Kernel2 => "kernel2",
        }
    }

    pub fn check_epsilon<T: Real>(self, epsilon: T) -> Result<()> {
        let ok = match self {
            KernelKind::Kernel1 => epsilon > T::zero() && epsilon < two_pi(),
            KernelKind::Kernel2 => epsilon > T::zero() && epsilon <= T::one(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::EpsilonOutOfDomain {
                kernel: self.name(),
                epsilon: epsilon.to_f64_lossy(),
                domain: match self {
                    KernelKind::Kernel1 => "(0, 2pi)",
                    KernelKind::Kernel2 => "(0, 1]",
                },
            })
        }
    }

    /// Operator-norm bound for the kernel-weighted phase matrix:
    /// `2pi / eps` and `2 / eps - 1` respectively.
    pub fn norm_bound<T: Real>(self, epsilon: T) -> T {
        match self {
            KernelKind::Kernel1 => two_pi::<T>() / epsilon,
            KernelKind::Kernel2 => T::lit(2.0) / epsilon - T::one(),
        }
    }
}

/// Kernel weight `f_k(eps)`.
pub fn kernel_weight<T: Real>(kind: KernelKind, k: i64, epsilon: T) -> Result<C<T>> {
    kind.check_epsilon(epsilon)?;
    Ok(kernel_weight_unchecked(kind, k, epsilon))
}

fn kernel_weight_unchecked<T: Real>(kind: KernelKind, k: i64, epsilon: T) -> C<T> {
    if k == 0 {
        return c1();
    }
    let kf = T::from_i64(k).expect("lag representable");
    match kind {
        // (e^{ix} - 1)/(ix) = e^{ix/2} sin(x/2)/(x/2)
        KernelKind::Kernel1 => {
            let half = kf * epsilon * T::lit(0.5);
            cis(half) * (half.sin() / half)
        }
        KernelKind::Kernel2 => cr((T::one() - epsilon).powi(k.unsigned_abs() as i32)),
    }
}

/// Subsequence `n_1 < n_2 < ...` of partial-sum cutoffs.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subsequence {
    /// `n_k = 2^k`.
    Dyadic,
    Explicit(Vec<usize>),
}

impl Subsequence {
    /// The cutoffs used at truncation `dim`: the subsequence up to and
    /// including its first term `>= dim - 1`, each clamped to `dim - 1`.
    pub fn cutoffs(&self, dim: usize) -> Vec<usize> {
        let top = dim.saturating_sub(1);
        let mut out = Vec::new();
        match self {
            Subsequence::Dyadic => {
                let mut n = 1usize;
                loop {
                    out.push(n.min(top));
                    if n >= top {
                        break;
                    }
                    n *= 2;
                }
            }
            Subsequence::Explicit(terms) => {
                for &n in terms {
                    out.push(n.min(top));
                    if n >= top {
                        break;
                    }
                }
            }
        }
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityEstimator<T> {
    PartialSum { subsequence: Subsequence },
    Kernel1 { epsilon: T },
    Kernel2 { epsilon: T },
}

impl<T: Real> DensityEstimator<T> {
    /// Partial sums along the dyadic subsequence; exact at truncation.
    pub fn exact() -> Self {
        Self::PartialSum {
            subsequence: Subsequence::Dyadic,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::PartialSum { subsequence } => match subsequence {
                Subsequence::Explicit(terms)
                    if terms.is_empty() || terms.windows(2).any(|w| w[0] >= w[1]) =>
                {
                    Err(Error::InvalidSpec(
                        "explicit subsequence must be nonempty and strictly increasing".into(),
                    ))
                }
                _ => Ok(()),
            },
            Self::Kernel1 { epsilon } => KernelKind::Kernel1.check_epsilon(*epsilon),
            Self::Kernel2 { epsilon } => KernelKind::Kernel2.check_epsilon(*epsilon),
        }
    }

    /// `(weights indexed by k + dim - 1, cutoff)`.
    fn weights(&self, dim: usize) -> (Vec<C<T>>, usize) {
        let max = dim as i64 - 1;
        match self {
            Self::PartialSum { subsequence } => {
                let cutoff = *subsequence.cutoffs(dim).last().unwrap_or(&0);
                (vec![c1(); 2 * dim - 1], cutoff)
            }
            Self::Kernel1 { epsilon } => (
                (-max..=max)
                    .map(|k| kernel_weight_unchecked(KernelKind::Kernel1, k, *epsilon))
                    .collect(),
                dim - 1,
            ),
            Self::Kernel2 { epsilon } => (
                (-max..=max)
                    .map(|k| kernel_weight_unchecked(KernelKind::Kernel2, k, *epsilon))
                    .collect(),
                dim - 1,
            ),
        }
    }
}

/// Lag coefficients `a_k = sum_{n-m=k, n,m<=cutoff} T_{m,n} c_{n,m}`.
fn lag_coefficients<T: Real>(c: &PhaseMatrix<T>, t: &CMatrix<T>, cutoff: usize) -> Vec<C<T>> {
    let dim = c.dim();
    let mut a = vec![c0(); 2 * dim - 1];
    for n in 0..=cutoff.min(dim - 1) {
        for m in 0..=cutoff.min(dim - 1) {
            let k = n + dim - 1 - m;
            a[k] = a[k] + t[[m, n]] * c.get(n, m);
        }
    }
    a
}

fn evaluate<T: Real>(a: &[C<T>], w: &[C<T>], dim: usize, theta: T) -> C<T> {
    let mut acc = c0();
    for (idx, (ak, wk)) in a.iter().zip(w).enumerate() {
        let k = idx as i64 - (dim as i64 - 1);
        let kf = T::from_i64(k).expect("lag representable");
        acc = acc + *ak * *wk * cis(kf * theta);
    }
    acc
}

/// Uniform grid `2 pi j / grid`, `j = 0 .. grid`.
pub fn uniform_grid<T: Real>(grid: usize) -> Vec<T> {
    let step = two_pi::<T>() / T::from_usize_lossy(grid);
    (0..grid).map(|j| T::from_usize_lossy(j) * step).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityCurve<T: Real> {
    pub thetas: Vec<T>,
    pub values: Vec<C<T>>,
    pub estimator: DensityEstimator<T>,
    pub observable: Option<String>,
    pub state: Option<String>,
}

impl<T: Real> DensityCurve<T> {
    /// `(2pi)^{-1} int_0^{2pi} g`, by the periodic trapezoid rule.
    pub fn integral(&self) -> C<T> {
        let sum = self.values.iter().fold(c0(), |acc, v| acc + *v);
        sum / T::from_usize_lossy(self.values.len().max(1))
    }

    pub fn max_imag(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.im.abs()))
    }

    pub fn min_real(&self) -> T {
        self.values.iter().fold(T::infinity(), |m, v| m.min(v.re))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    /// CSV with header `theta,re,im`, 17 significant digits.
    pub fn write_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "theta,re,im")?;
        for (t, v) in self.thetas.iter().zip(&self.values) {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e}",
                t.to_f64_lossy(),
                v.re.to_f64_lossy(),
                v.im.to_f64_lossy()
            )?;
        }
        Ok(())
    }
}

/// Density of `X -> tr(T E(X))` on a uniform grid of `grid` points.
///
/// States are summed directly; any other trace-class operator is reduced
/// to four states `T = a T_a - b T_b + i c T_c - i d T_d` and the curves are
/// recombined.
pub fn estimate_density<T: Real>(
    e: &PhaseObservable<T>,
    t: &FockState<T>,
    estimator: &DensityEstimator<T>,
    grid: usize,
) -> Result<DensityCurve<T>> {
    estimator.validate()?;
    if grid == 0 {
        return Err(Error::InvalidGrid(grid));
    }
    let dim = e.matrix.dim();
    if dim != t.dim() {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: t.dim(),
        });
    }
    let thetas = uniform_grid::<T>(grid);
    let (weights, cutoff) = estimator.weights(dim);
    let a = if t.is_state() {
        lag_coefficients(&e.matrix, t.entries(), cutoff)
    } else {
        let parts = t.four_state_decomposition();
        let mut a = vec![c0(); 2 * dim - 1];
        for (part, sign) in parts.parts.iter().zip(FourStateDecomposition::signs()) {
            if let Some(state) = &part.state {
                let coeff = sign * part.weight;
                for (acc, v) in a.iter_mut().zip(lag_coefficients(&e.matrix, state.entries(), cutoff)) {
                    *acc = *acc + coeff * v;
                }
            }
        }
        a
    };
    let values = thetas
        .iter()
        .map(|&th| evaluate(&a, &weights, dim, th))
        .collect();
    Ok(DensityCurve {
        thetas,
        values,
        estimator: estimator.clone(),
        observable: e.label.clone(),
        state: None,
    })
}

/// Curves for every cutoff of a partial-sum subsequence.
pub fn partial_sum_sequence<T: Real>(
    e: &PhaseObservable<T>,
    t: &FockState<T>,
    subsequence: &Subsequence,
    grid: usize,
) -> Result<Vec<(usize, DensityCurve<T>)>> {
    let dim = e.matrix.dim();
    subsequence
        .cutoffs(dim)
        .into_iter()
        .map(|n| {
            let est = DensityEstimator::PartialSum {
                subsequence: Subsequence::Explicit(vec![n]),
            };
            estimate_density(e, t, &est, grid).map(|c| (n, c))
        })
        .collect()
}

/// `C_eps = sum_{n,m} c_{n,m} f_{n-m}(eps) |n><m|`.
pub fn kernel_matrix<T: Real>(c: &PhaseMatrix<T>, kind: KernelKind, epsilon: T) -> Result<CMatrix<T>> {
    kind.check_epsilon(epsilon)?;
    let dim = c.dim();
    let mut m = c.structure().entries().clone();
    for n in 0..dim {
        for j in 0..dim {
            m[[n, j]] = m[[n, j]] * kernel_weight_unchecked(kind, n as i64 - j as i64, epsilon);
        }
    }
    Ok(m)
}

/// Largest singular value of the kernel-weighted phase matrix.
pub fn kernel_operator_norm<T: Real>(c: &PhaseMatrix<T>, kind: KernelKind, epsilon: T) -> Result<T> {
    Ok(linalg::operator_norm(&kernel_matrix(c, kind, epsilon)?))
}

/// `sum_{n,m} |c_{n,m} f2_{n-m}(eps)|`, bounded by `N + 2N(1 - eps)/eps`.
pub fn abel_absolute_sum<T: Real>(c: &PhaseMatrix<T>, epsilon: T) -> Result<T> {
    Ok(linalg::abs_sum(&kernel_matrix(c, KernelKind::Kernel2, epsilon)?))
}

/// `tr[T R(theta) C R(theta)^*]`, evaluated by forming the conjugated matrix.
pub fn kernel_trace<T: Real>(t: &FockState<T>, kernel: &CMatrix<T>, theta: PhasePoint<T>) -> C<T> {
    let dim = t.dim();
    let phases: Vec<C<T>> = (0..dim)
        .map(|n| cis(T::from_usize_lossy(n) * theta.value()))
        .collect();
    let mut rotated = kernel.clone();
    for n in 0..dim {
        for m in 0..dim {
            rotated[[n, m]] = phases[n] * kernel[[n, m]] * phases[m].conj();
        }
    }
    linalg::trace_product(t.entries(), &rotated)
}

/// Parameters of [`derivative_identity_check`].
#[derive(Debug, Clone)]
pub struct IdentityCheckConfig<T> {
    /// Decreasing epsilons for both kernels.
    pub ladder: Vec<T>,
    /// Central finite-difference step.
    pub step: T,
}

impl<T: Real> Default for IdentityCheckConfig<T> {
    fn default() -> Self {
        Self {
            ladder: (0..=10).map(|j| T::lit(0.5f64.powi(j))).collect(),
            step: two_pi::<T>() / T::lit(4096.0),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelLadderReport {
    pub estimator: KernelKind,
    pub epsilon_ladder: Vec<f64>,
    /// `max_theta |tr[T R C_eps R^*] - g(theta)|` per epsilon.
    pub deviations: Vec<f64>,
    /// Deviation at the smallest epsilon.
    pub max_deviation: f64,
    /// Least-squares slope of `log deviation` against `log eps`.
    pub slope_fit: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiniteDifferenceReport {
    pub step: f64,
    pub points: usize,
    /// `max |2pi (p[0,x+h) - p[0,x-h)) / 2h - g(x)|`.
    pub max_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub finite_difference: FiniteDifferenceReport,
    pub kernels: Vec<KernelLadderReport>,
    /// Largest pairwise deviation among the finite-difference derivative,
    /// the kernel traces at the smallest epsilon and the exact density.
    pub max_deviation: f64,
}

/// Compares three routes to the density on the given angles: derivative of
/// the distribution function, kernel traces along the epsilon ladder, and
/// the exact truncated sum.
pub fn derivative_identity_check<T: Real>(
    e: &PhaseObservable<T>,
    t: &FockState<T>,
    thetas: &[T],
    config: &IdentityCheckConfig<T>,
) -> Result<IdentityReport> {
    if !t.is_state() {
        return Err(Error::NotAState("derivative identity check needs a state".into()));
    }
    let dim = e.matrix.dim();
    if dim != t.dim() {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: t.dim(),
        });
    }
    for &eps in &config.ladder {
        KernelKind::Kernel1.check_epsilon(eps)?;
        KernelKind::Kernel2.check_epsilon(eps)?;
    }
    let a = lag_coefficients(&e.matrix, t.entries(), dim - 1);
    let ones = vec![c1(); 2 * dim - 1];
    let exact: Vec<C<T>> = thetas.iter().map(|&th| evaluate(&a, &ones, dim, th)).collect();

    let h = config.step;
    let tau = two_pi::<T>();
    let mut fd_max = T::zero();
    let mut fd_points = 0;
    let mut fd_values: Vec<Option<C<T>>> = Vec::with_capacity(thetas.len());
    for (&x, g) in thetas.iter().zip(&exact) {
        if x - h < T::zero() || x + h > tau {
            fd_values.push(None);
            continue;
        }
        let upper = complex_measure(e, t, &BorelSet::initial_segment(x + h))?;
        let lower = complex_measure(e, t, &BorelSet::initial_segment(x - h))?;
        let d = (upper - lower) * (tau / (h + h));
        fd_max = fd_max.max((d - *g).norm());
        fd_points += 1;
        fd_values.push(Some(d));
    }

    let mut kernels = Vec::new();
    let mut finest: Vec<Vec<C<T>>> = Vec::new();
    for kind in [KernelKind::Kernel1, KernelKind::Kernel2] {
        let mut deviations = Vec::with_capacity(config.ladder.len());
        let mut last = Vec::new();
        for &eps in &config.ladder {
            let km = kernel_matrix(&e.matrix, kind, eps)?;
            let vals: Vec<C<T>> = thetas
                .iter()
                .map(|&th| kernel_trace(t, &km, PhasePoint::new(th)))
                .collect();
            let dev = vals
                .iter()
                .zip(&exact)
                .fold(T::zero(), |m, (v, g)| m.max((*v - *g).norm()));
            deviations.push(dev.to_f64_lossy());
            last = vals;
        }
        let eps_f: Vec<f64> = config.ladder.iter().map(|x| x.to_f64_lossy()).collect();
        kernels.push(KernelLadderReport {
            estimator: kind,
            slope_fit: log_log_slope(&eps_f, &deviations),
            max_deviation: deviations.last().copied().unwrap_or(0.0),
            epsilon_ladder: eps_f,
            deviations,
        });
        finest.push(last);
    }

    let mut pairwise = fd_max.to_f64_lossy();
    for curve in &finest {
        for (j, v) in curve.iter().enumerate() {
            pairwise = pairwise.max((*v - exact[j]).norm().to_f64_lossy());
            if let Some(d) = fd_values[j] {
                pairwise = pairwise.max((*v - d).norm().to_f64_lossy());
            }
        }
    }
    if finest.len() == 2 {
        for (x, y) in finest[0].iter().zip(&finest[1]) {
            pairwise = pairwise.max((*x - *y).norm().to_f64_lossy());
        }
    }

    Ok(IdentityReport {
        finite_difference: FiniteDifferenceReport {
            step: h.to_f64_lossy(),
            points: fd_points,
            max_deviation: fd_max.to_f64_lossy(),
        },
        kernels,
        max_deviation: pairwise,
    })
}

/// Least-squares slope through `(log x, log y)`, ignoring non-positive `y`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(&a, &b)| a > 0.0 && b > 1e-300)
        .map(|(&a, &b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use ndarray::array;
    use std::f64::consts::PI;

    #[test]
    fn kernel_weight_examples() {
        for eps in [0.1, 1.0, 3.0] {
            assert_eq!(kernel_weight(KernelKind::Kernel1, 0, eps).unwrap(), c1());
        }
        assert_eq!(kernel_weight(KernelKind::Kernel2, 3, 0.5).unwrap(), cr(0.125));
        assert_eq!(kernel_weight(KernelKind::Kernel2, -3, 0.5).unwrap(), cr(0.125));
        // Taylor: f1_k(eps) = 1 + ik eps/2 + O(eps^2)
        for j in 1..12 {
            let eps = 0.5f64.powi(j);
            let w = kernel_weight(KernelKind::Kernel1, 2, eps).unwrap();
            let closed = (cis(2.0 * eps) - c1()) / C::new(0.0, 2.0 * eps);
            assert!((w - closed).norm() < 1e-12);
            let dev = (w - c1()).norm();
            assert!(dev <= 1.01 * eps && dev >= 0.99 * eps * (1.0 - eps), "eps={eps}");
        }
        assert!(kernel_weight(KernelKind::Kernel1, 1, 0.0).is_err());
        assert!(kernel_weight(KernelKind::Kernel1, 1, 7.0).is_err());
        assert!(kernel_weight(KernelKind::Kernel2, 1, 1.5).is_err());
        assert!(kernel_weight(KernelKind::Kernel2, 1, 1.0).is_ok());
        for k in -20..20 {
            assert!(kernel_weight(KernelKind::Kernel2, k, 0.3).unwrap().norm() <= 1.0);
        }
    }

    #[test]
    fn cutoffs() {
        assert_eq!(Subsequence::Dyadic.cutoffs(1), vec![0]);
        assert_eq!(Subsequence::Dyadic.cutoffs(16), vec![1, 2, 4, 8, 15]);
        assert_eq!(Subsequence::Dyadic.cutoffs(9), vec![1, 2, 4, 8]);
        assert_eq!(Subsequence::Explicit(vec![0, 3, 50, 60]).cutoffs(10), vec![0, 3, 9]);
    }

    #[test]
    fn vacuum_density_is_flat() {
        let e = PhaseObservable::<f64>::canonical(4);
        let vac = FockState::number(0, 4).unwrap();
        for est in [
            DensityEstimator::exact(),
            DensityEstimator::Kernel1 { epsilon: 0.3 },
            DensityEstimator::Kernel2 { epsilon: 0.3 },
        ] {
            let curve = estimate_density(&e, &vac, &est, 64).unwrap();
            assert!(curve.values.iter().all(|v| (v - cr(1.0)).norm() < 1e-15));
        }
    }

    #[test]
    fn superposition_density() {
        let e = PhaseObservable::<f64>::canonical(2);
        let plus = FockState::from_vector(&array![cr(1.0), cr(1.0)]).unwrap();
        let curve = estimate_density(&e, &plus, &DensityEstimator::exact(), 256).unwrap();
        for (t, v) in curve.thetas.iter().zip(&curve.values) {
            assert!((v - cr(1.0 + t.cos())).norm() < 1e-14);
        }
        let triv = PhaseObservable::<f64>::trivial(2);
        let curve = estimate_density(&triv, &plus, &DensityEstimator::Kernel2 { epsilon: 0.5 }, 32)
            .unwrap();
        assert!(curve.values.iter().all(|v| (v - cr(1.0)).norm() < 1e-15));
    }

    #[test]
    fn four_state_route_matches_linearity() {
        let mut rng = sampling::rng(9);
        let e = PhaseObservable::new(sampling::any_phase_matrix::<f64>(&mut rng, 5));
        let t = sampling::trace_class::<f64>(&mut rng, 5);
        assert!(!t.is_state());
        let curve = estimate_density(&e, &t, &DensityEstimator::exact(), 64).unwrap();
        // direct double sum as oracle
        for (th, v) in curve.thetas.iter().zip(&curve.values) {
            let mut g: C<f64> = c0();
            for n in 0..5 {
                for m in 0..5 {
                    g += t.get(m, n) * e.matrix.get(n, m) * cis((n as f64 - m as f64) * th);
                }
            }
            assert!((g - v).norm() < 1e-12);
        }
        assert!((curve.integral() - t.trace()).norm() < 1e-12);
    }

    #[test]
    fn operator_norm_examples() {
        let can = PhaseMatrix::<f64>::canonical(8);
        let n = kernel_operator_norm(&can, KernelKind::Kernel2, 1.0).unwrap();
        assert!((n - 1.0).abs() < 1e-14);
        assert!(n <= KernelKind::Kernel2.norm_bound(1.0) + 1e-9);
        for eps in [0.01, 0.5, 2.0] {
            let n = kernel_operator_norm(&PhaseMatrix::<f64>::trivial(6), KernelKind::Kernel1, eps)
                .unwrap();
            assert!((n - 1.0).abs() < 1e-14);
        }
        let mut rng = sampling::rng(10);
        let c = sampling::any_phase_matrix::<f64>(&mut rng, 12);
        for j in 0..=10 {
            let eps = 0.5f64.powi(j);
            for kind in [KernelKind::Kernel1, KernelKind::Kernel2] {
                let n = kernel_operator_norm(&c, kind, eps).unwrap();
                assert!(n <= kind.norm_bound(eps) + 1e-9);
            }
        }
        assert!(kernel_operator_norm(&c, KernelKind::Kernel2, 0.0).is_err());
    }

    #[test]
    fn csv_format() {
        let e = PhaseObservable::<f64>::canonical(2);
        let vac = FockState::number(0, 2).unwrap();
        let curve = estimate_density(&e, &vac, &DensityEstimator::exact(), 4).unwrap();
        let mut buf = Vec::new();
        curve.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "theta,re,im");
        assert_eq!(lines.len(), 5);
        assert_eq!(
            lines[1],
            "0.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0"
        );
        let theta: f64 = lines[2].split(',').next().unwrap().parse().unwrap();
        assert_eq!(theta, PI / 2.0);
    }

    #[test]
    fn identity_check_on_vacuum() {
        let e = PhaseObservable::<f64>::canonical(3);
        let vac = FockState::number(0, 3).unwrap();
        let thetas = uniform_grid::<f64>(64);
        let r = derivative_identity_check(&e, &vac, &thetas, &IdentityCheckConfig::default()).unwrap();
        assert!(r.max_deviation < 1e-6, "{r:?}");
    }

    #[test]
    fn slope_of_power_law() {
        let x = [1.0, 0.5, 0.25, 0.125];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v * v).collect();
        assert!((log_log_slope(&x, &y).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(log_log_slope(&[1.0], &[1.0]), None);
    }
}
