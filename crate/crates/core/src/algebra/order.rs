// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Divisibility preorder on structure matrices and the diagonal-unitary
//! equivalence of phase matrices.

use std::collections::VecDeque;

use super::{PhaseMatrix, StructureMatrix};
use crate::borel::reduce_angle;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::{c0, cis, Real};
use crate::tolerance::Tolerances;

/// Outcome of `D <= E`, i.e. `D = E * F` for some bounded `F`.
#[derive(Debug, Clone, PartialEq)]
pub enum OrderDecision<T: Real> {
    Yes {
        witness: StructureMatrix<T>,
        witness_norm: T,
    },
    /// `e_{n,m}` vanishes while `d_{n,m}` is significantly nonzero.
    No { position: (usize, usize), modulus: T },
    /// Entries where `e` vanishes and `d` is neither zero nor significant.
    Undetermined { positions: Vec<(usize, usize)> },
}

impl<T: Real> OrderDecision<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Self::Yes { .. })
    }
}

pub fn order_leq<T: Real>(d: &StructureMatrix<T>, e: &StructureMatrix<T>) -> Result<OrderDecision<T>> {
    order_leq_with(d, e, &T::default_tolerances())
}

pub fn order_leq_with<T: Real>(
    d: &StructureMatrix<T>,
    e: &StructureMatrix<T>,
    tol: &Tolerances,
) -> Result<OrderDecision<T>> {
    if d.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            left: d.dim(),
            right: e.dim(),
        });
    }
    let zero = T::lit(tol.zero);
    let significant = T::lit(tol.significant);
    let dim = d.dim();
    let mut witness = CMatrix::from_elem((dim, dim), c0());
    let mut gray = Vec::new();
    for n in 0..dim {
        for m in 0..dim {
            let (dv, ev) = (d.get(n, m), e.get(n, m));
            if ev.norm() > zero {
                witness[[n, m]] = dv / ev;
            } else if dv.norm() > significant {
                return Ok(OrderDecision::No {
                    position: (n, m),
                    modulus: dv.norm(),
                });
            } else if dv.norm() > zero {
                gray.push((n, m));
            }
        }
    }
    if !gray.is_empty() {
        return Ok(OrderDecision::Undetermined { positions: gray });
    }
    let witness = StructureMatrix::from_entries_unchecked(witness);
    let witness_norm = witness.sup_norm();
    Ok(OrderDecision::Yes {
        witness,
        witness_norm,
    })
}

/// Phases on one connected component of the support graph, with the
/// component's lowest index pinned to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseComponent<T> {
    pub nodes: Vec<usize>,
    pub upsilon: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EquivFailure {
    ModulusMismatch { position: (usize, usize), deviation: f64 },
    InconsistentCycle { position: (usize, usize), deviation: f64 },
}

/// Outcome of `C ~ D`, i.e. `C = D * (e^{i(u_n - u_m)})`.
#[derive(Debug, Clone, PartialEq)]
pub enum EquivDecision<T: Real> {
    /// Recovered phases with `u_0 = 0`.
    Yes { upsilon: Vec<T> },
    No(EquivFailure),
    /// The support of `D` is disconnected, so relative phases between
    /// components are unconstrained.
    Undecidable { components: Vec<PhaseComponent<T>> },
}

impl<T: Real> EquivDecision<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Self::Yes { .. })
    }
}

pub fn equiv_phase<T: Real>(c: &PhaseMatrix<T>, d: &PhaseMatrix<T>) -> Result<EquivDecision<T>> {
    equiv_phase_with(c, d, &T::default_tolerances())
}

/// Spanning-tree phase recovery: `c_{n,m} / d_{n,m} = e^{i(u_n - u_m)}` is
/// propagated breadth-first from the lowest index of each component and
/// then checked on every supported entry.
pub fn equiv_phase_with<T: Real>(
    c: &PhaseMatrix<T>,
    d: &PhaseMatrix<T>,
    tol: &Tolerances,
) -> Result<EquivDecision<T>> {
    let dim = c.dim();
    if dim != d.dim() {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: d.dim(),
        });
    }
    let eq_tol = T::lit(tol.unimodular);
    let significant = T::lit(tol.significant);
    for n in 0..dim {
        for m in 0..dim {
            let dev = (c.get(n, m).norm() - d.get(n, m).norm()).abs();
            if dev > eq_tol {
                return Ok(EquivDecision::No(EquivFailure::ModulusMismatch {
                    position: (n, m),
                    deviation: dev.to_f64_lossy(),
                }));
            }
        }
    }

    let supported = |n: usize, m: usize| n != m && d.get(n, m).norm() > significant;
    let mut upsilon = vec![T::zero(); dim];
    let mut component = vec![usize::MAX; dim];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for root in 0..dim {
        if component[root] != usize::MAX {
            continue;
        }
        let id = components.len();
        component[root] = id;
        let mut nodes = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(n) = queue.pop_front() {
            for m in 0..dim {
                if component[m] == usize::MAX && supported(n, m) {
                    // c_nm / d_nm = e^{i(u_n - u_m)}
                    let ratio = c.get(n, m) / d.get(n, m);
                    upsilon[m] = upsilon[n] - ratio.arg();
                    component[m] = id;
                    nodes.push(m);
                    queue.push_back(m);
                }
            }
        }
        nodes.sort_unstable();
        components.push(nodes);
    }

    for n in 0..dim {
        for m in 0..dim {
            if !supported(n, m) {
                continue;
            }
            let predicted = d.get(n, m) * cis(upsilon[n] - upsilon[m]);
            let dev = (c.get(n, m) - predicted).norm();
            if dev > eq_tol {
                return Ok(EquivDecision::No(EquivFailure::InconsistentCycle {
                    position: (n, m),
                    deviation: dev.to_f64_lossy(),
                }));
            }
        }
    }

    let upsilon: Vec<T> = upsilon.into_iter().map(reduce_angle).collect();
    if components.len() == 1 {
        return Ok(EquivDecision::Yes { upsilon });
    }
    Ok(EquivDecision::Undecidable {
        components: components
            .into_iter()
            .map(|nodes| PhaseComponent {
                upsilon: nodes.iter().map(|&n| upsilon[n]).collect(),
                nodes,
            })
            .collect(),
    })
}
