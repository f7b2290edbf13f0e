//! Heisenberg evolution, reduction over the environment, coefficient
//! extraction and closed-form reference solutions.

mod analytic;
mod leakage;
mod reduce;
mod trajectory;

pub use analytic::analytic_evolve;
pub use leakage::{leakage_check, LeakageReport, TrajectoryRequest};
pub use reduce::{heisenberg_evolve, heisenberg_evolve_window, reduce, reduce_dense, ReducedDynamics, ReducedMap};
pub use trajectory::{
    ladder_coeffs, pauli_coeffs, trajectory, trajectory_with, uniform_grid, CoefficientBasis, Coefficients, Component,
    LadderCoeffs, Observable, ReducedTrajectory,
};
