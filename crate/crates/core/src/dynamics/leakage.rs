use serde::{Deserialize, Serialize};

use super::reduce::ReducedDynamics;
use super::trajectory::{trajectory_with, CoefficientBasis, Observable, ReducedTrajectory};
use crate::error::{Error, Result};
use crate::hamiltonians::{build, HamiltonianSpec};
use crate::model::{env_state, EnvState};

/// Sensitivity of a trajectory to the Fock cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeakageReport {
    pub cutoff_used: usize,
    pub comparison_cutoff: usize,
    /// Largest `|c' − c| / max(|c|, 1)` over every time, observable and
    /// coefficient.
    pub max_relative_shift: f64,
}

/// Everything needed to recompute a trajectory at another cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRequest<'a> {
    pub hamiltonian: &'a HamiltonianSpec,
    pub env: &'a EnvState,
    pub observables: &'a [String],
    pub t_grid: &'a [f64],
    pub basis: CoefficientBasis,
    /// Leading S levels to propagate; `None` for all of them.
    pub s_window: Option<usize>,
}

impl TrajectoryRequest<'_> {
    pub fn run(&self) -> Result<ReducedTrajectory> {
        let h = build(self.hamiltonian)?;
        let rho = env_state(self.env, &h.space)?;
        let s_dim = h.space.s_dim();
        let dynamics = ReducedDynamics::with_window(&h, &rho, self.s_window.unwrap_or(s_dim))?;
        let window = dynamics.window();
        let observables = self
            .observables
            .iter()
            .map(|l| Observable::named(l, s_dim))
            .collect::<Result<Vec<_>>>()?;
        let basis = match self.basis {
            CoefficientBasis::Ladder { levels: None } => CoefficientBasis::Ladder {
                levels: Some(window.min(s_dim - 2)),
            },
            ref b => b.clone(),
        };
        trajectory_with(&dynamics, &observables, self.t_grid, &basis)
    }
}

/// Recompute at `cutoff + bump` and report the largest coefficient shift.
///
/// The coefficient fit window is pinned to the base run so both runs fit
/// the same levels.
pub fn leakage_check(request: &TrajectoryRequest<'_>, bump: usize) -> Result<LeakageReport> {
    let cutoff = request
        .hamiltonian
        .cutoff()
        .ok_or_else(|| Error::Unsupported(format!("{} has no oscillator cutoff", request.hamiltonian.family())))?;
    if bump == 0 {
        return Ok(LeakageReport {
            cutoff_used: cutoff,
            comparison_cutoff: cutoff,
            max_relative_shift: 0.0,
        });
    }
    let base_dim = cutoff + 1;
    let pinned = match request.basis {
        CoefficientBasis::Ladder { levels } => CoefficientBasis::Ladder {
            levels: Some(levels.unwrap_or(request.s_window.unwrap_or(base_dim).min(base_dim - 2))),
        },
        ref b => b.clone(),
    };
    // Oscillator S: keep the reduced block the same size in both runs.
    let window = match request.hamiltonian.is_oscillator_subsystem() {
        true => Some(request.s_window.unwrap_or(base_dim)),
        false => request.s_window,
    };
    let base = TrajectoryRequest {
        basis: pinned.clone(),
        s_window: window,
        ..request.clone()
    };
    let bumped_spec = request.hamiltonian.with_cutoff(cutoff + bump)?;
    let bumped = TrajectoryRequest {
        hamiltonian: &bumped_spec,
        basis: pinned,
        s_window: window,
        ..request.clone()
    };
    let (a, b) = (base.run()?, bumped.run()?);
    let mut shift: f64 = 0.0;
    for (ra, rb) in a.coeffs.iter().zip(&b.coeffs) {
        for (ca, cb) in ra.iter().zip(rb) {
            for ((_, x), (_, y)) in ca.0.iter().zip(&cb.0) {
                shift = shift.max((y - x).norm() / x.norm().max(1.0));
            }
        }
    }
    Ok(LeakageReport {
        cutoff_used: cutoff,
        comparison_cutoff: cutoff + bump,
        max_relative_shift: shift,
    })
}
