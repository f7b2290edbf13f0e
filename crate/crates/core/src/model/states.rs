use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::operators::{pauli, Operator};
use super::space::SpaceSpec;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianEigen};

/// Tolerance on the density-matrix invariants.
pub const STATE_TOLERANCE: f64 = 1e-10;

/// Positive, unit-trace operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: Operator,
}

impl DensityMatrix {
    pub fn new(op: Operator) -> Result<Self> {
        let m = &op.matrix;
        let asym = m.max_hermitian_asymmetry()?;
        if asym > STATE_TOLERANCE {
            return Err(Error::InvalidState(format!("not Hermitian (asymmetry {asym:e})")));
        }
        let tr = m.trace()?;
        if (tr - Complex64::new(1.0, 0.0)).norm() > STATE_TOLERANCE {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = HermitianEigen::new(m)?.values.into_iter().fold(f64::INFINITY, f64::min);
        if min < -STATE_TOLERANCE {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { op })
    }

    /// `|ψ⟩⟨ψ|` after normalizing `ψ`.
    pub fn pure(psi: &[Complex64], space: SpaceSpec) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let m = ComplexMatrix::from_fn(psi.len(), psi.len(), |i, j| psi[i] * psi[j].conj() / (norm * norm));
        Self::new(Operator::new(m, space)?)
    }

    pub fn maximally_mixed(space: SpaceSpec) -> Result<Self> {
        let d = space.total_dim();
        Self::new(Operator::new(ComplexMatrix::identity(d).scale_real(1.0 / d as f64), space)?)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.op.matrix
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.op.space
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    /// `Tr(ρ X)`.
    pub fn expectation(&self, x: &ComplexMatrix) -> Result<Complex64> {
        self.op.matrix.matmul(x)?.trace()
    }

    /// `U ρ U†`.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = u.matmul(&self.op.matrix)?.matmul(&u.adjoint())?;
        Self::new(Operator::new(m, self.op.space.clone())?)
    }

    /// Spectral decomposition as `(weight, vector)` pairs, dropping
    /// weights below `1e-14`.
    pub fn pure_components(&self) -> Result<Vec<(f64, Vec<Complex64>)>> {
        let n = self.dim();
        let m = &self.op.matrix;
        // Diagonal states (Fock, mixed) decompose exactly in the basis.
        if (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)] == Complex64::new(0.0, 0.0))) {
            return Ok((0..n)
                .filter(|&i| m[(i, i)].re > 1e-14)
                .map(|i| {
                    let mut v = vec![Complex64::new(0.0, 0.0); n];
                    v[i] = Complex64::new(1.0, 0.0);
                    (m[(i, i)].re, v)
                })
                .collect());
        }
        let eig = HermitianEigen::new(m)?;
        Ok(eig
            .values
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 1e-14)
            .map(|(k, &w)| (w, (0..n).map(|i| eig.vectors[(i, k)]).collect()))
            .collect())
    }

    /// Tensor product with another state (this one first).
    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        let mut factors = self.space().factors().to_vec();
        factors.extend(other.space().factors().iter().cloned());
        let space = SpaceSpec::environment_only(factors)?;
        Self::new(Operator::new(self.matrix().kron(other.matrix()), space)?)
    }
}

/// Environment state kinds, applied identically to every R factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnvState {
    /// Eigenvector of Ξ_axis for eigenvalue `sign` (±1).
    PauliEigenstate { axis: usize, sign: i8 },
    /// `½(I + r·Ξ)` with `|r| ≤ 1`.
    Bloch { r: [f64; 3] },
    MaximallyMixed,
    Fock { n: usize },
    /// Coherent state with amplitude `alpha = [re, im]`, truncated and renormalized.
    CoherentTruncated { alpha: [f64; 2] },
}

impl EnvState {
    /// The state on a single factor of dimension `dim`.
    pub fn local_matrix(&self, dim: usize) -> Result<ComplexMatrix> {
        let need_qubit = |what: &str| -> Result<()> {
            if dim != 2 {
                return Err(Error::InvalidParameter(format!("{what} requires a qubit factor, got dimension {dim}")));
            }
            Ok(())
        };
        let id2 = ComplexMatrix::identity(2);
        match *self {
            EnvState::PauliEigenstate { axis, sign } => {
                need_qubit("pauli_eigenstate")?;
                if sign != 1 && sign != -1 {
                    return Err(Error::InvalidParameter(format!("eigenvalue sign {sign} is not ±1")));
                }
                Ok((&id2 + &pauli(axis)?.scale_real(sign as f64)).scale_real(0.5))
            }
            EnvState::Bloch { r } => {
                need_qubit("bloch")?;
                let len = r.iter().map(|x| x * x).sum::<f64>().sqrt();
                if !len.is_finite() || len > 1.0 + 1e-12 {
                    return Err(Error::InvalidParameter(format!("Bloch vector length {len} exceeds 1")));
                }
                let mut m = id2;
                for (k, &rk) in r.iter().enumerate() {
                    m.axpy(Complex64::new(rk, 0.0), &pauli(k + 1)?);
                }
                Ok(m.scale_real(0.5))
            }
            EnvState::MaximallyMixed => Ok(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64)),
            EnvState::Fock { n } => {
                if dim < 3 {
                    return Err(Error::InvalidParameter("fock requires an oscillator factor".into()));
                }
                // The top level is a truncation artifact; keep states below it.
                if n >= dim - 1 {
                    return Err(Error::InvalidParameter(format!("Fock level {n} not below cutoff {}", dim - 1)));
                }
                let mut m = ComplexMatrix::zeros(dim, dim);
                m[(n, n)] = Complex64::new(1.0, 0.0);
                Ok(m)
            }
            EnvState::CoherentTruncated { alpha } => {
                if dim < 3 {
                    return Err(Error::InvalidParameter("coherent_truncated requires an oscillator factor".into()));
                }
                let a = Complex64::new(alpha[0], alpha[1]);
                if !a.re.is_finite() || !a.im.is_finite() {
                    return Err(Error::InvalidParameter("coherent amplitude must be finite".into()));
                }
                let psi = coherent_amplitudes(a, dim);
                let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
                Ok(ComplexMatrix::from_fn(dim, dim, |i, j| psi[i] * psi[j].conj() / norm2))
            }
        }
    }
}

/// Unnormalized coherent-state amplitudes `αⁿ/√n!` on `dim` levels.
fn coherent_amplitudes(alpha: Complex64, dim: usize) -> Vec<Complex64> {
    let mut amps = Vec::with_capacity(dim);
    let mut current = Complex64::new(1.0, 0.0);
    for n in 0..dim {
        if n > 0 {
            current = current * alpha / (n as f64).sqrt();
        }
        amps.push(current);
    }
    amps
}

/// Build the environment state on the R factors of `space`.
pub fn env_state(kind: &EnvState, space: &SpaceSpec) -> Result<DensityMatrix> {
    let r_space = space.environment()?;
    let mut matrix = ComplexMatrix::identity(1);
    for factor in r_space.factors() {
        matrix = matrix.kron(&kind.local_matrix(factor.dim)?);
    }
    DensityMatrix::new(Operator::new(matrix, r_space)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hs_distance;
    use crate::model::operators::ladder;
    use crate::model::space::Factor;

    fn qubit_env() -> SpaceSpec {
        SpaceSpec::s_first(vec![Factor::qubit("s")], vec![Factor::qubit("r")]).unwrap()
    }

    fn osc_env(cutoff: usize) -> SpaceSpec {
        SpaceSpec::s_first(vec![Factor::qubit("s")], vec![Factor::oscillator("b", cutoff)]).unwrap()
    }

    #[test]
    fn pauli_eigenstate_is_half_identity_plus_axis() {
        let rho = env_state(&EnvState::PauliEigenstate { axis: 2, sign: 1 }, &qubit_env()).unwrap();
        let expected = (&ComplexMatrix::identity(2) + &pauli(2).unwrap()).scale_real(0.5);
        assert!(hs_distance(rho.matrix(), &expected).unwrap() < 1e-15);
        assert!(env_state(&EnvState::PauliEigenstate { axis: 2, sign: 0 }, &qubit_env()).is_err());
    }

    #[test]
    fn maximally_mixed_has_zero_pauli_means() {
        let rho = env_state(&EnvState::MaximallyMixed, &qubit_env()).unwrap();
        for k in 1..=3 {
            assert!(rho.expectation(&pauli(k).unwrap()).unwrap().norm() < 1e-15);
        }
    }

    #[test]
    fn bloch_rejects_long_vectors() {
        assert!(env_state(&EnvState::Bloch { r: [0.8, 0.8, 0.0] }, &qubit_env()).is_err());
    }

    #[test]
    fn fock_ground_state_has_zero_mean_lowering() {
        let rho = env_state(&EnvState::Fock { n: 0 }, &osc_env(10)).unwrap();
        assert_eq!(rho.matrix()[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(rho.expectation(&ladder(11).unwrap()).unwrap().norm(), 0.0);
        assert!(env_state(&EnvState::Fock { n: 10 }, &osc_env(10)).is_err());
    }

    #[test]
    fn qubit_kinds_rejected_on_oscillators() {
        assert!(env_state(&EnvState::Bloch { r: [0.0; 3] }, &osc_env(4)).is_err());
        assert!(env_state(&EnvState::Fock { n: 0 }, &qubit_env()).is_err());
    }

    #[test]
    fn coherent_state_mean_approaches_alpha() {
        let alpha = Complex64::new(1.2, -0.5);
        let cutoff = (alpha.norm_sqr() + 8.0 * alpha.norm() + 20.0).ceil() as usize;
        let rho = env_state(&EnvState::CoherentTruncated { alpha: [alpha.re, alpha.im] }, &osc_env(cutoff)).unwrap();
        let mean = rho.expectation(&ladder(cutoff + 1).unwrap()).unwrap();
        assert!((mean - alpha).norm() / alpha.norm() < 1e-6);
    }

    #[test]
    fn product_over_several_r_factors() {
        let space = SpaceSpec::s_first(vec![Factor::qubit("s")], vec![Factor::qubit("r1"), Factor::qubit("r2")]).unwrap();
        let rho = env_state(&EnvState::MaximallyMixed, &space).unwrap();
        assert_eq!(rho.dim(), 4);
        assert!(hs_distance(rho.matrix(), &ComplexMatrix::identity(4).scale_real(0.25)).unwrap() < 1e-15);
    }

    #[test]
    fn serde_tags_are_snake_case() {
        let s: EnvState = serde_json::from_str(r#"{"kind":"pauli_eigenstate","axis":1,"sign":-1}"#).unwrap();
        assert_eq!(s, EnvState::PauliEigenstate { axis: 1, sign: -1 });
        assert!(serde_json::from_str::<EnvState>(r#"{"kind":"fock","n":0,"extra":1}"#).is_err());
    }
}
