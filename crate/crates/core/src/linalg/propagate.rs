use num_complex::Complex64;
use rayon::prelude::*;

use super::eigen::{HermitianEigen, HERMITIAN_TOLERANCE};
use super::matrix::ComplexMatrix;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// Invariant blocks up to this size are diagonalized; larger ones fall back
/// to a Taylor action on the sparse matrix.
pub const MAX_EIGEN_BLOCK: usize = 512;

const TAYLOR_MAX_TERMS: usize = 60;

#[derive(Clone, Debug)]
struct EigenBlock {
    indices: Vec<usize>,
    eig: HermitianEigen,
}

#[derive(Clone, Debug)]
enum Kind {
    Blocks(Vec<EigenBlock>),
    Taylor { h: SparseMatrix, norm: f64 },
}

/// Applies `e^{-itH}` to blocks of state vectors.
///
/// The Hamiltonian is first split into the connected components of its
/// sparsity pattern. When every component is small each one is diagonalized
/// exactly; otherwise the action is computed by a scaled Taylor series.
#[derive(Clone, Debug)]
pub struct Propagator {
    dim: usize,
    kind: Kind,
}

impl Propagator {
    pub fn new(h: &SparseMatrix) -> Result<Self> {
        h.ensure_hermitian(HERMITIAN_TOLERANCE)?;
        let components = h.connected_components();
        let largest = components.iter().map(Vec::len).max().unwrap_or(0);
        let kind = if largest <= MAX_EIGEN_BLOCK {
            let blocks = components
                .into_par_iter()
                .map(|indices| {
                    let block = ComplexMatrix::from_fn(indices.len(), indices.len(), |a, b| h.get(indices[a], indices[b]));
                    HermitianEigen::new(&block).map(|eig| EigenBlock { indices, eig })
                })
                .collect::<Result<Vec<_>>>()?;
            Kind::Blocks(blocks)
        } else {
            Kind::Taylor {
                h: h.clone(),
                norm: h.norm_one(),
            }
        };
        Ok(Self { dim: h.dim(), kind })
    }

    pub fn from_dense(h: &ComplexMatrix) -> Result<Self> {
        Self::new(&SparseMatrix::from_dense(h)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True when the exact block-eigendecomposition path is in use.
    pub fn is_exact(&self) -> bool {
        matches!(self.kind, Kind::Blocks(_))
    }

    /// `e^{-itH} v`.
    pub fn apply(&self, t: f64, v: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_rows(v)?;
        if t == 0.0 {
            return Ok(v.clone());
        }
        match &self.kind {
            Kind::Blocks(blocks) => {
                let mut out = ComplexMatrix::zeros(v.rows(), v.cols());
                for block in blocks {
                    let sub = ComplexMatrix::from_fn(block.indices.len(), v.cols(), |a, c| v[(block.indices[a], c)]);
                    let evolved = block.eig.evolve_vectors(t, &sub)?;
                    for (a, &row) in block.indices.iter().enumerate() {
                        out.row_mut(row).copy_from_slice(evolved.row(a));
                    }
                }
                Ok(out)
            }
            Kind::Taylor { h, norm } => taylor_action(h, *norm, t, v),
        }
    }

    /// `e^{-itH} v` for every `t` in `times`. The Taylor path steps
    /// incrementally through the grid, so `times` should be sorted.
    pub fn evolve_grid(&self, times: &[f64], v: &ComplexMatrix) -> Result<Vec<ComplexMatrix>> {
        self.check_rows(v)?;
        match &self.kind {
            Kind::Blocks(_) => times.par_iter().map(|&t| self.apply(t, v)).collect(),
            Kind::Taylor { h, norm } => {
                let mut out = Vec::with_capacity(times.len());
                let mut current = v.clone();
                let mut now = 0.0;
                for &t in times {
                    current = taylor_action(h, *norm, t - now, &current)?;
                    now = t;
                    out.push(current.clone());
                }
                Ok(out)
            }
        }
    }

    /// Full `e^{-itH}`; only sensible for modest dimensions.
    pub fn unitary(&self, t: f64) -> Result<ComplexMatrix> {
        self.apply(t, &ComplexMatrix::identity(self.dim))
    }

    fn check_rows(&self, v: &ComplexMatrix) -> Result<()> {
        if v.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.rows(),
                context: "propagated vectors vs Hamiltonian",
            });
        }
        Ok(())
    }
}

fn taylor_action(h: &SparseMatrix, norm: f64, t: f64, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    if t == 0.0 {
        return Ok(v.clone());
    }
    // Substeps keep ‖Hτ‖ ≤ 1 so each series converges in ~20 terms.
    let steps = (norm * t.abs()).ceil().max(1.0) as usize;
    let tau = t / steps as f64;
    let mut acc = v.clone();
    for _ in 0..steps {
        let mut term = acc.clone();
        let mut next = acc.clone();
        for k in 1..=TAYLOR_MAX_TERMS {
            term = h.mul_dense(&term)?.scale(Complex64::new(0.0, -tau / k as f64));
            next.axpy(Complex64::new(1.0, 0.0), &term);
            if term.hs_norm() <= 1e-17 * next.hs_norm() {
                break;
            }
        }
        acc = next;
    }
    Ok(acc)
}
