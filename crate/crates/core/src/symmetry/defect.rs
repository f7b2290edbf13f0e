use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::forms::TemplateMatch;
use super::unitary::{realize, Side, UnitarySpec};
use crate::dynamics::{heisenberg_evolve, Observable, ReducedDynamics};
use crate::error::{Error, Result};
use crate::linalg::{hs_distance, ComplexMatrix, Propagator};
use crate::model::{extend_subsystem, DensityMatrix, Operator, SparseOperator};
use crate::verdict::{Tolerances, Verdict};

/// Outcome of checking one unitary over an observable basis and time grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub unitary: UnitarySpec,
    pub tolerances: Tolerances,
    pub max_defect: f64,
    /// Max over the grid, per observable label.
    pub per_observable_defect: BTreeMap<String, f64>,
    /// Max over observables, per grid point.
    pub defect_by_time: Vec<f64>,
    pub verdict: Verdict,
    pub matched_templates: Vec<TemplateMatch>,
}

/// Default observable basis for symmetry checks: `{I, Σ₁, Σ₂, Σ₃}` for a
/// qubit, `{A, A†, A†A, A², I}` for an oscillator.
pub fn default_basis(s_dim: usize) -> Result<Vec<Observable>> {
    let labels: &[&str] = if s_dim == 2 {
        &["I", "S1", "S2", "S3"]
    } else {
        &["A", "Adag", "N", "A2", "I"]
    };
    labels.iter().map(|l| Observable::named(l, s_dim)).collect()
}

/// Per-(Q, t) defect evaluator for one unitary.
struct DefectKernel {
    side: Side,
    u_window: ComplexMatrix,
    /// Reduced dynamics for `U_R ρ_R U_R†` when the unitary acts on R.
    env_dynamics: Option<ReducedDynamics>,
    u_s: ComplexMatrix,
}

impl DefectKernel {
    fn new(dynamics: &ReducedDynamics, rho_r: &DensityMatrix, spec: &UnitarySpec) -> Result<Self> {
        let space = dynamics.space();
        let local = spec.local_matrix(space)?;
        let w = dynamics.window();
        match spec.side() {
            Side::S => {
                let n = local.rows();
                for i in 0..n {
                    for j in 0..n {
                        if (i < w) != (j < w) && local[(i, j)].norm() > 0.0 {
                            return Err(Error::Unsupported(format!(
                                "{} mixes the {w} propagated S levels with the rest",
                                spec.name()
                            )));
                        }
                    }
                }
                Ok(Self {
                    side: Side::S,
                    u_window: local.leading_block(w),
                    env_dynamics: None,
                    u_s: local,
                })
            }
            Side::R => {
                let rotated = rho_r.conjugated(&local)?;
                let env = ReducedDynamics::from_propagator(
                    space.clone(),
                    Arc::clone(dynamics.propagator()),
                    &rotated,
                    w,
                )?;
                Ok(Self {
                    side: Side::R,
                    u_window: ComplexMatrix::identity(w),
                    env_dynamics: Some(env),
                    u_s: ComplexMatrix::identity(space.s_dim()),
                })
            }
        }
    }

    /// Defects for every observable at each time in `times`.
    fn defects(&self, dynamics: &ReducedDynamics, basis: &[Observable], times: &[f64]) -> Result<Vec<Vec<f64>>> {
        let maps = dynamics.over(times)?;
        let env_maps = match &self.env_dynamics {
            Some(env) => Some(env.over(times)?),
            None => None,
        };
        maps.par_iter()
            .enumerate()
            .map(|(k, map)| {
                basis
                    .iter()
                    .map(|q| match self.side {
                        Side::S => {
                            let rotated = self.u_s.adjoint().matmul(&q.matrix)?.matmul(&self.u_s)?;
                            let lhs = map.apply(&rotated)?;
                            let rhs = self.u_window.adjoint().matmul(&map.apply(&q.matrix)?)?.matmul(&self.u_window)?;
                            hs_distance(&lhs, &rhs)
                        }
                        Side::R => {
                            let env = &env_maps.as_ref().expect("env maps")[k];
                            hs_distance(&map.apply(&q.matrix)?, &env.apply(&q.matrix)?)
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// `‖Tr_R[ρ_R e^{itH}U†QU e^{-itH}] − Tr_R[ρ_R U†e^{itH}Q e^{-itH}U]‖_HS`.
pub fn symmetry_defect(
    h: &SparseOperator,
    rho_r: &DensityMatrix,
    spec: &UnitarySpec,
    q_s: &ComplexMatrix,
    t: f64,
) -> Result<f64> {
    let dynamics = ReducedDynamics::new(h, rho_r)?;
    let kernel = DefectKernel::new(&dynamics, rho_r, spec)?;
    let q = Observable::new("Q", q_s.clone());
    Ok(kernel.defects(&dynamics, std::slice::from_ref(&q), &[t])?[0][0])
}

/// `|Tr[W e^{itH}U†QU e^{-itH}] − Tr[W U†e^{itH}Q e^{-itH}U]|` for a state
/// `W` on the whole space, possibly correlated. Dense.
pub fn symmetry_defect_full(
    w: &DensityMatrix,
    h: &SparseOperator,
    spec: &UnitarySpec,
    q_s: &ComplexMatrix,
    t: f64,
) -> Result<f64> {
    let space = &h.space;
    if w.dim() != space.total_dim() {
        return Err(Error::DimensionMismatch {
            expected: space.total_dim(),
            found: w.dim(),
            context: "global state vs space",
        });
    }
    let u = realize(spec, space)?;
    let q = extend_subsystem(q_s, space)?;
    let rotated = Operator::new(u.matrix.adjoint().matmul(&q.matrix)?.matmul(&u.matrix)?, space.clone())?;
    let lhs = w.expectation(&heisenberg_evolve(h, &rotated, t)?.matrix)?;
    let evolved = heisenberg_evolve(h, &q, t)?.matrix;
    let rhs = w.expectation(&u.matrix.adjoint().matmul(&evolved)?.matmul(&u.matrix)?)?;
    Ok((lhs - rhs).norm())
}

pub fn check_symmetry(
    h: &SparseOperator,
    rho_r: &DensityMatrix,
    spec: &UnitarySpec,
    q_basis: &[Observable],
    t_grid: &[f64],
    tolerances: Tolerances,
) -> Result<SymmetryReport> {
    let dynamics = ReducedDynamics::new(h, rho_r)?;
    check_symmetry_with(&dynamics, rho_r, spec, q_basis, t_grid, tolerances)
}

/// As [`check_symmetry`], reusing prepared dynamics (and its S window).
pub fn check_symmetry_with(
    dynamics: &ReducedDynamics,
    rho_r: &DensityMatrix,
    spec: &UnitarySpec,
    q_basis: &[Observable],
    t_grid: &[f64],
    tolerances: Tolerances,
) -> Result<SymmetryReport> {
    if q_basis.is_empty() {
        return Err(Error::InvalidParameter("empty observable basis".into()));
    }
    let kernel = DefectKernel::new(dynamics, rho_r, spec)?;
    let table = kernel.defects(dynamics, q_basis, t_grid)?;
    let mut per_observable = BTreeMap::new();
    for (i, q) in q_basis.iter().enumerate() {
        let m = table.iter().map(|row| row[i]).fold(0.0, f64::max);
        per_observable.insert(q.label.clone(), m);
    }
    let defect_by_time: Vec<f64> = table.iter().map(|row| row.iter().copied().fold(0.0, f64::max)).collect();
    let max_defect = defect_by_time.iter().copied().fold(0.0, f64::max);
    Ok(SymmetryReport {
        unitary: spec.clone(),
        tolerances,
        max_defect,
        per_observable_defect: per_observable,
        defect_by_time,
        verdict: tolerances.classify(max_defect),
        matched_templates: Vec::new(),
    })
}

/// Largest distance between the reduced dynamics for `ρ_R` and for
/// `U_R ρ_R U_R†`, over `q_basis × t_grid`.
pub fn env_invariance_defect(
    h: &SparseOperator,
    rho_r: &DensityMatrix,
    u_r: &ComplexMatrix,
    q_basis: &[Observable],
    t_grid: &[f64],
) -> Result<f64> {
    let propagator = Arc::new(Propagator::new(&h.matrix)?);
    let s_dim = h.space.s_dim();
    let a = ReducedDynamics::from_propagator(h.space.clone(), Arc::clone(&propagator), rho_r, s_dim)?;
    let b = ReducedDynamics::from_propagator(h.space.clone(), propagator, &rho_r.conjugated(u_r)?, s_dim)?;
    let (ma, mb) = (a.over(t_grid)?, b.over(t_grid)?);
    let mut worst: f64 = 0.0;
    for (x, y) in ma.iter().zip(&mb) {
        for q in q_basis {
            worst = worst.max(hs_distance(&x.apply(&q.matrix)?, &y.apply(&q.matrix)?)?);
        }
    }
    Ok(worst)
}
