use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest asymmetry accepted on an input Hamiltonian. Anything above this
/// is a construction bug, not rounding.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Spectral decomposition `H = V diag(λ) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors as columns.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn new(h: &ComplexMatrix) -> Result<Self> {
        let n = h.dim()?;
        h.ensure_hermitian(HERMITIAN_TOLERANCE)?;
        // Symmetrize so the solver sees an exactly Hermitian input.
        let m = DMatrix::from_fn(n, n, |i, j| 0.5 * (h[(i, j)] + h[(j, i)].conj()));
        let eig = m
            .try_symmetric_eigen(f64::EPSILON, 0)
            .ok_or_else(|| Error::Eigen(format!("no convergence for {n}x{n} Hermitian matrix")))?;
        let values = eig.eigenvalues.iter().copied().collect();
        let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, j)]);
        Ok(Self { values, vectors })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V diag(f(λ)) V†`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let phases: Vec<Complex64> = self.values.iter().map(|&l| f(l)).collect();
        let scaled = ComplexMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * phases[j]);
        &scaled * &self.vectors.adjoint()
    }

    /// `e^{-itH}`.
    pub fn unitary(&self, t: f64) -> ComplexMatrix {
        self.apply_fn(|l| Complex64::from_polar(1.0, -l * t))
    }

    /// `e^{-itH} v` for a block of column vectors.
    pub fn evolve_vectors(&self, t: f64, v: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut coeffs = self.vectors.adjoint_matmul(v)?;
        for (k, &l) in self.values.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -l * t);
            for z in coeffs.row_mut(k) {
                *z *= phase;
            }
        }
        self.vectors.matmul(&coeffs)
    }
}

/// `e^{-ith}` for Hermitian `h`, computed by eigendecomposition.
pub fn evolve_unitary(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(HermitianEigen::new(h)?.unitary(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hs_distance;

    #[test]
    fn zero_time_gives_identity() {
        let h = ComplexMatrix::from_real_rows(&[&[1.0, 0.5], &[0.5, -2.0]]);
        let u = evolve_unitary(&h, 0.0).unwrap();
        assert!(hs_distance(&u, &ComplexMatrix::identity(2)).unwrap() < 1e-14);
    }

    #[test]
    fn diagonal_exponential() {
        let s3 = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let t = std::f64::consts::FRAC_PI_2;
        let u = evolve_unitary(&s3, t).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)]);
        assert!(hs_distance(&u, &expected).unwrap() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(evolve_unitary(&m, 1.0), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn small_asymmetry_below_tolerance_is_accepted() {
        let mut m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        m[(0, 1)] += Complex64::new(1e-12, 0.0);
        assert!(evolve_unitary(&m, 1.0).is_ok());
    }

    #[test]
    fn vector_evolution_matches_full_unitary() {
        let h = ComplexMatrix::from_fn(3, 3, |i, j| {
            let re = (i + j) as f64 * 0.3;
            let im = if i == j { 0.0 } else if i < j { 0.7 } else { -0.7 };
            Complex64::new(re, im)
        });
        let eig = HermitianEigen::new(&h).unwrap();
        let v = ComplexMatrix::from_fn(3, 2, |i, j| Complex64::new(i as f64, j as f64 + 1.0));
        let direct = eig.unitary(1.3).matmul(&v).unwrap();
        let via = eig.evolve_vectors(1.3, &v).unwrap();
        assert!(hs_distance(&direct, &via).unwrap() < 1e-13);
    }
}
