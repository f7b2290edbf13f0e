//! Dense and sparse complex linear algebra on small Hilbert spaces.

mod eigen;
mod matrix;
mod partial_trace;
mod propagate;
mod sparse;

pub use eigen::{evolve_unitary, HermitianEigen, HERMITIAN_TOLERANCE};
pub use matrix::{hs_distance, kron, ComplexMatrix};
pub use partial_trace::partial_trace;
pub use propagate::{Propagator, MAX_EIGEN_BLOCK};
pub use sparse::SparseMatrix;

pub use num_complex::Complex64;

/// Shorthand for a complex number.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
