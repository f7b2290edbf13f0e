use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Propagator};
use crate::model::{extend_subsystem, DensityMatrix, Operator, SpaceSpec, SparseOperator};

/// Reduced Heisenberg dynamics for one Hamiltonian and one environment state.
///
/// With `ρ_R = Σ_j p_j |φ_j⟩⟨φ_j|` the reduced image of `Q` is
/// `Σ_j p_j Ψ_j† (Q⊗I) Ψ_j` where `Ψ_j = e^{-itH}(I_S⊗|φ_j⟩)`. Only the first
/// `window` columns of `I_S` are propagated; the default is all of them.
#[derive(Clone, Debug)]
pub struct ReducedDynamics {
    space: SpaceSpec,
    propagator: Arc<Propagator>,
    weights: Vec<f64>,
    initial: ComplexMatrix,
    window: usize,
}

/// The reduced map at one instant.
#[derive(Clone, Debug)]
pub struct ReducedMap {
    pub t: f64,
    r_dim: usize,
    s_dim: usize,
    window: usize,
    weights: Vec<f64>,
    states: ComplexMatrix,
}

impl ReducedDynamics {
    pub fn new(h: &SparseOperator, rho_r: &DensityMatrix) -> Result<Self> {
        Self::with_window(h, rho_r, h.space.s_dim())
    }

    pub fn with_window(h: &SparseOperator, rho_r: &DensityMatrix, window: usize) -> Result<Self> {
        let propagator = Arc::new(Propagator::new(&h.matrix)?);
        Self::from_propagator(h.space.clone(), propagator, rho_r, window)
    }

    /// Reuse an existing propagator, e.g. to compare several environment states.
    pub fn from_propagator(
        space: SpaceSpec,
        propagator: Arc<Propagator>,
        rho_r: &DensityMatrix,
        window: usize,
    ) -> Result<Self> {
        space.require_s_first()?;
        if propagator.dim() != space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.total_dim(),
                found: propagator.dim(),
                context: "Hamiltonian vs space dimension",
            });
        }
        let (s_dim, r_dim) = (space.s_dim(), space.r_dim());
        if rho_r.dim() != r_dim {
            return Err(Error::DimensionMismatch {
                expected: r_dim,
                found: rho_r.dim(),
                context: "environment state vs R dimension",
            });
        }
        if window == 0 || window > s_dim {
            return Err(Error::InvalidParameter(format!("S window {window} not in 1..={s_dim}")));
        }
        let components = rho_r.pure_components()?;
        let mut initial = ComplexMatrix::zeros(space.total_dim(), window * components.len());
        for (j, (_, phi)) in components.iter().enumerate() {
            for n in 0..window {
                for (r, &amp) in phi.iter().enumerate() {
                    initial[(n * r_dim + r, j * window + n)] = amp;
                }
            }
        }
        Ok(Self {
            space,
            propagator,
            weights: components.iter().map(|(w, _)| *w).collect(),
            initial,
            window,
        })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn propagator(&self) -> &Arc<Propagator> {
        &self.propagator
    }

    pub fn at(&self, t: f64) -> Result<ReducedMap> {
        Ok(self.map_from(t, self.propagator.apply(t, &self.initial)?))
    }

    /// Reduced maps over a sorted time grid.
    pub fn over(&self, times: &[f64]) -> Result<Vec<ReducedMap>> {
        if times.is_empty() {
            return Err(Error::InvalidParameter("empty time grid".into()));
        }
        if times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidParameter("time grid not sorted".into()));
        }
        let states = self.propagator.evolve_grid(times, &self.initial)?;
        Ok(times.iter().zip(states).map(|(&t, s)| self.map_from(t, s)).collect())
    }

    fn map_from(&self, t: f64, states: ComplexMatrix) -> ReducedMap {
        ReducedMap {
            t,
            r_dim: self.space.r_dim(),
            s_dim: self.space.s_dim(),
            window: self.window,
            weights: self.weights.clone(),
            states,
        }
    }
}

impl ReducedMap {
    pub fn window(&self) -> usize {
        self.window
    }

    /// Reduced image of `q_s` on the leading `window` levels of S.
    pub fn apply(&self, q_s: &ComplexMatrix) -> Result<ComplexMatrix> {
        if q_s.rows() != self.s_dim || q_s.cols() != self.s_dim {
            return Err(Error::DimensionMismatch {
                expected: self.s_dim,
                found: q_s.rows().max(q_s.cols()),
                context: "observable vs S dimension",
            });
        }
        let (w, dr) = (self.window, self.r_dim);
        let cols = self.states.cols();
        // (Q⊗I)Ψ, exploiting the Kronecker structure.
        let mut q_states = ComplexMatrix::zeros(self.states.rows(), cols);
        for s in 0..self.s_dim {
            for sp in 0..self.s_dim {
                let q = q_s[(s, sp)];
                if q == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for r in 0..dr {
                    let src = self.states.row(sp * dr + r);
                    let dst = q_states.row_mut(s * dr + r);
                    for (d, &x) in dst.iter_mut().zip(src) {
                        *d += q * x;
                    }
                }
            }
        }
        let mut out = ComplexMatrix::zeros(w, w);
        for (j, &p) in self.weights.iter().enumerate() {
            let range: Vec<usize> = (j * w..(j + 1) * w).collect();
            let all: Vec<usize> = (0..self.states.rows()).collect();
            let psi = self.states.select(&all, &range);
            let qpsi = q_states.select(&all, &range);
            out.axpy(Complex64::new(p, 0.0), &psi.adjoint_matmul(&qpsi)?);
        }
        Ok(out)
    }
}

/// `e^{itH} q e^{-itH}`.
pub fn heisenberg_evolve(h: &SparseOperator, q: &Operator, t: f64) -> Result<Operator> {
    if h.space != q.space {
        return Err(Error::InvalidSpace("Hamiltonian and observable live on different spaces".into()));
    }
    let u = Propagator::new(&h.matrix)?.unitary(t)?;
    Operator::new(u.adjoint_matmul(&q.matrix.matmul(&u)?)?, q.space.clone())
}

/// Matrix elements of `e^{itH} q e^{-itH}` between the basis states in `indices`.
pub fn heisenberg_evolve_window(
    propagator: &Propagator,
    q: &SparseOperator,
    t: f64,
    indices: &[usize],
) -> Result<ComplexMatrix> {
    let n = propagator.dim();
    if q.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: q.dim(),
            context: "observable vs Hamiltonian",
        });
    }
    let mut v = ComplexMatrix::zeros(n, indices.len());
    for (c, &i) in indices.iter().enumerate() {
        if i >= n {
            return Err(Error::InvalidParameter(format!("basis index {i} out of range")));
        }
        v[(i, c)] = Complex64::new(1.0, 0.0);
    }
    let psi = propagator.apply(t, &v)?;
    psi.adjoint_matmul(&q.matrix.mul_dense(&psi)?)
}

/// `Tr_R[(I⊗ρ_R) e^{itH}(q_s⊗I)e^{-itH}]`.
pub fn reduce(h: &SparseOperator, rho_r: &DensityMatrix, q_s: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    ReducedDynamics::new(h, rho_r)?.at(t)?.apply(q_s)
}

/// The same reduction computed literally with dense matrices and a partial
/// trace. Slow; kept as a cross-check.
pub fn reduce_dense(h: &SparseOperator, rho_r: &DensityMatrix, q_s: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let space = &h.space;
    if rho_r.dim() != space.r_dim() {
        return Err(Error::DimensionMismatch {
            expected: space.r_dim(),
            found: rho_r.dim(),
            context: "environment state vs R dimension",
        });
    }
    let evolved = heisenberg_evolve(h, &extend_subsystem(q_s, space)?, t)?;
    let weighted = ComplexMatrix::identity(space.s_dim()).kron(rho_r.matrix()).matmul(&evolved.matrix)?;
    space.trace_out_environment(&weighted)
}
