// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrix helpers and a Hermitian eigensolver.
//!
//! The eigensolver is a cyclic complex Jacobi method. It is slower than a
//! tridiagonal QR for large matrices, but at the truncation sizes used here
//! (dim <= a few hundred) it is fast and resolves eigenvalues near zero to
//! high *absolute* accuracy, which is what the PSD tests at the boundary of
//! the cone rely on.

use ndarray::{Array1, Array2, Axis};

use crate::scalar::{c0, cr, Real, C};

pub type CMatrix<T> = Array2<C<T>>;
pub type CVector<T> = Array1<C<T>>;

pub fn identity<T: Real>(dim: usize) -> CMatrix<T> {
    let mut m = CMatrix::from_elem((dim, dim), c0());
    for i in 0..dim {
        m[[i, i]] = cr(T::one());
    }
    m
}

pub fn adjoint<T: Real>(a: &CMatrix<T>) -> CMatrix<T> {
    a.t().mapv(|z| z.conj())
}

/// Sequential matrix product. The loop order is fixed so results are
/// bitwise reproducible.
pub fn matmul<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    let (n, k) = a.dim();
    let m = b.ncols();
    debug_assert_eq!(k, b.nrows());
    let mut out = CMatrix::from_elem((n, m), c0());
    for i in 0..n {
        for l in 0..k {
            let ail = a[[i, l]];
            if ail.re == T::zero() && ail.im == T::zero() {
                continue;
            }
            for j in 0..m {
                out[[i, j]] = out[[i, j]] + ail * b[[l, j]];
            }
        }
    }
    out
}

pub fn matvec<T: Real>(a: &CMatrix<T>, v: &CVector<T>) -> CVector<T> {
    let mut out = CVector::from_elem(a.nrows(), c0());
    for i in 0..a.nrows() {
        let mut acc = c0();
        for j in 0..a.ncols() {
            acc = acc + a[[i, j]] * v[j];
        }
        out[i] = acc;
    }
    out
}

pub fn trace<T: Real>(a: &CMatrix<T>) -> C<T> {
    let mut acc = c0();
    for i in 0..a.nrows().min(a.ncols()) {
        acc = acc + a[[i, i]];
    }
    acc
}

/// `tr(A B) = sum_{i,j} A_{ij} B_{ji}` without forming the product.
pub fn trace_product<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> C<T> {
    let mut acc = c0();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc = acc + a[[i, j]] * b[[j, i]];
        }
    }
    acc
}

/// Largest entry modulus.
pub fn sup_norm<T: Real>(a: &CMatrix<T>) -> T {
    a.iter().fold(T::zero(), |m, z| m.max(z.norm()))
}

pub fn max_abs_diff<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    a.iter()
        .zip(b.iter())
        .fold(T::zero(), |m, (x, y)| m.max((*x - *y).norm()))
}

/// `max |A_ij - conj(A_ji)|`.
pub fn hermitian_deviation<T: Real>(a: &CMatrix<T>) -> T {
    let n = a.nrows();
    let mut dev = T::zero();
    for i in 0..n {
        for j in i..n {
            dev = dev.max((a[[i, j]] - a[[j, i]].conj()).norm());
        }
    }
    dev
}

/// `(A + A^*) / 2`.
pub fn hermitian_part<T: Real>(a: &CMatrix<T>) -> CMatrix<T> {
    let half = T::lit(0.5);
    let n = a.nrows();
    let mut h = a.clone();
    for i in 0..n {
        for j in 0..n {
            h[[i, j]] = (a[[i, j]] + a[[j, i]].conj()) * half;
        }
    }
    h
}

pub fn vector_norm<T: Real>(v: &CVector<T>) -> T {
    v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// `sum_i conj(a_i) b_i`.
pub fn inner<T: Real>(a: &CVector<T>, b: &CVector<T>) -> C<T> {
    a.iter()
        .zip(b.iter())
        .fold(c0(), |acc, (x, y)| acc + x.conj() * *y)
}

/// `|v><v|`.
pub fn outer<T: Real>(v: &CVector<T>) -> CMatrix<T> {
    let n = v.len();
    let mut m = CMatrix::from_elem((n, n), c0());
    for i in 0..n {
        for j in 0..n {
            m[[i, j]] = v[i] * v[j].conj();
        }
    }
    m
}

/// Eigendecomposition `A = V diag(values) V^*` of a Hermitian matrix.
///
/// Eigenvalues are sorted in descending order (ties keep their original
/// index order). Each eigenvector column is normalized and its phase fixed so
/// that its largest-modulus entry (lowest index among near-ties) is real and
/// positive.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// Decomposes the Hermitian part of `a`.
    pub fn new(a: &CMatrix<T>) -> Self {
        let n = a.nrows();
        assert_eq!(n, a.ncols(), "eigendecomposition needs a square matrix");
        let mut m = hermitian_part(a);
        for i in 0..n {
            m[[i, i]] = cr(m[[i, i]].re);
        }
        let mut v = identity::<T>(n);
        jacobi_sweeps(&mut m, &mut v);

        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<T> = (0..n).map(|i| m[[i, i]].re).collect();
        order.sort_by(|&i, &j| {
            diag[j]
                .partial_cmp(&diag[i])
                .unwrap_or(std::cmp::Ordering::Equal)
        });

        let values = order.iter().map(|&i| diag[i]).collect();
        let mut vectors = CMatrix::from_elem((n, n), c0());
        for (col, &src) in order.iter().enumerate() {
            let mut column = v.column(src).to_owned();
            fix_phase(&mut column);
            vectors.column_mut(col).assign(&column);
        }
        Self { values, vectors }
    }

    pub fn min(&self) -> T {
        self.values.last().copied().unwrap_or_else(T::zero)
    }

    pub fn max(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }

    pub fn vector(&self, k: usize) -> CVector<T> {
        self.vectors.column(k).to_owned()
    }

    /// `V diag(f(values)) V^*`.
    pub fn reconstruct_with(&self, f: impl Fn(T) -> T) -> CMatrix<T> {
        let n = self.vectors.nrows();
        let mut out = CMatrix::from_elem((n, n), c0());
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            if w == T::zero() {
                continue;
            }
            for i in 0..n {
                let vi = self.vectors[[i, k]] * w;
                for j in 0..n {
                    out[[i, j]] = out[[i, j]] + vi * self.vectors[[j, k]].conj();
                }
            }
        }
        out
    }
}

/// Smallest eigenvalue of the Hermitian part of `a`.
pub fn min_eigenvalue<T: Real>(a: &CMatrix<T>) -> T {
    HermitianEigen::new(a).min()
}

/// Spectral norm (largest singular value): `sqrt(lambda_max(A^* A))`.
pub fn operator_norm<T: Real>(a: &CMatrix<T>) -> T {
    let gram = matmul(&adjoint(a), a);
    HermitianEigen::new(&gram).max().max(T::zero()).sqrt()
}

fn fix_phase<T: Real>(column: &mut CVector<T>) {
    let norm = vector_norm(column);
    if norm == T::zero() {
        return;
    }
    let max = column.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    let slack = max * T::lit(1e-12);
    let pivot = column
        .iter()
        .position(|z| z.norm() >= max - slack)
        .unwrap_or(0);
    let p = column[pivot];
    let phase = p.conj() / p.norm();
    column.mapv_inplace(|z| z * phase / norm);
    column[pivot] = cr(column[pivot].re);
}

fn jacobi_sweeps<T: Real>(a: &mut CMatrix<T>, v: &mut CMatrix<T>) {
    let n = a.nrows();
    if n < 2 {
        return;
    }
    let eps = T::epsilon();
    let frob = a.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
    if frob == T::zero() {
        return;
    }
    let floor = T::min_positive_value().sqrt();
    for _sweep in 0..64 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a[[p, q]].norm_sqr();
            }
        }
        if off.sqrt() <= eps * frob * T::lit(1e-2) || off.sqrt() <= floor {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(a, v, p, q, floor);
            }
        }
    }
}

/// Annihilates `a[p][q]` with the unitary `diag(1, e^{-i phi}) R(c, s)`.
fn rotate<T: Real>(a: &mut CMatrix<T>, v: &mut CMatrix<T>, p: usize, q: usize, tiny: T) {
    let apq = a[[p, q]];
    let r = apq.norm();
    let app = a[[p, p]].re;
    let aqq = a[[q, q]].re;
    if r == T::zero() {
        return;
    }
    if r <= tiny {
        a[[p, q]] = c0();
        a[[q, p]] = c0();
        return;
    }
    let e = apq / r;
    let theta = (aqq - app) / (r + r);
    let t = {
        let denom = theta.abs() + (theta * theta + T::one()).sqrt();
        let t = T::one() / denom;
        if theta < T::zero() {
            -t
        } else {
            t
        }
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    let ebar = e.conj();
    // U = [[c, s], [-s ebar, c ebar]] on the (p, q) plane.
    let u_pp = cr(c);
    let u_pq = cr(s);
    let u_qp = ebar * (-s);
    let u_qq = ebar * c;
    let n = a.nrows();
    for k in 0..n {
        let akp = a[[k, p]];
        let akq = a[[k, q]];
        a[[k, p]] = akp * u_pp + akq * u_qp;
        a[[k, q]] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[[p, k]];
        let aqk = a[[q, k]];
        a[[p, k]] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[[q, k]] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[[p, q]] = c0();
    a[[q, p]] = c0();
    a[[p, p]] = cr(a[[p, p]].re);
    a[[q, q]] = cr(a[[q, q]].re);
    for k in 0..n {
        let vkp = v[[k, p]];
        let vkq = v[[k, q]];
        v[[k, p]] = vkp * u_pp + vkq * u_qp;
        v[[k, q]] = vkp * u_pq + vkq * u_qq;
    }
}

/// Row sums of entry moduli; used for the entrywise-summability predicate.
pub fn abs_sum<T: Real>(a: &CMatrix<T>) -> T {
    a.map_axis(Axis(1), |row| {
        row.iter().fold(T::zero(), |acc, z| acc + z.norm())
    })
    .iter()
    .fold(T::zero(), |acc, x| acc + *x)
}
