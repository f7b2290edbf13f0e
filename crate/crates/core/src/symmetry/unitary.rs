use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::model::{pauli, Operator, SpaceSpec};

/// Tolerance on unit axes and unitarity of realized matrices.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

/// A symmetry unitary acting on S, or on R for the `env_*` kinds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum UnitarySpec {
    /// `e^{-iuΣ₃/2}`.
    RotZ { u: f64 },
    /// `e^{-iu(n·Σ)/2}` for a unit axis `n`.
    RotAxis { u: f64, axis: [f64; 3] },
    /// `−i(Σ₁+Σ₂)/√2`, rotation by π about the x = y axis.
    RotXyPi,
    /// `e^{-iuG/2}` with `G = (αΣ₁ + γΣ₂)/√(α²+γ²)`.
    GGroup { u: f64, alpha: f64, gamma: f64 },
    /// `e^{-iuA†A}` on an oscillator S.
    NumberPhase { u: f64 },
    /// `e^{-iπA†A}`.
    ParityPi,
    /// `e^{-i(angle/2)Ξ_axis}` on every R qubit.
    EnvRotation { axis: usize, angle: f64 },
    /// Explicit matrix on S, given as real and imaginary rows.
    Custom { re: Vec<Vec<f64>>, im: Vec<Vec<f64>> },
    /// Explicit matrix on the whole of R.
    EnvCustom { re: Vec<Vec<f64>>, im: Vec<Vec<f64>> },
}

/// Which side of the split a unitary acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    S,
    R,
}

impl UnitarySpec {
    pub fn side(&self) -> Side {
        match self {
            UnitarySpec::EnvRotation { .. } | UnitarySpec::EnvCustom { .. } => Side::R,
            _ => Side::S,
        }
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match self {
            UnitarySpec::RotZ { u } => format!("rot_z({u})"),
            UnitarySpec::RotAxis { u, axis } => format!("rot_axis({u}; {}, {}, {})", axis[0], axis[1], axis[2]),
            UnitarySpec::RotXyPi => "rot_xy_pi".into(),
            UnitarySpec::GGroup { u, alpha, gamma } => format!("g_group({u}; {alpha}, {gamma})"),
            UnitarySpec::NumberPhase { u } => format!("number_phase({u})"),
            UnitarySpec::ParityPi => "parity_pi".into(),
            UnitarySpec::EnvRotation { axis, angle } => format!("env_rotation({axis}, {angle})"),
            UnitarySpec::Custom { .. } => "custom".into(),
            UnitarySpec::EnvCustom { .. } => "env_custom".into(),
        }
    }

    /// The matrix on the factor block it acts on (all of S, or all of R).
    pub fn local_matrix(&self, space: &SpaceSpec) -> Result<ComplexMatrix> {
        let s_dim = space.s_dim();
        let need_qubit = || -> Result<()> {
            if s_dim != 2 {
                return Err(Error::InvalidParameter(format!("{} needs a qubit S, got dimension {s_dim}", self.name())));
            }
            Ok(())
        };
        let need_oscillator = || -> Result<()> {
            if s_dim < 3 {
                return Err(Error::InvalidParameter(format!("{} needs an oscillator S", self.name())));
            }
            Ok(())
        };
        let m = match self {
            UnitarySpec::RotZ { u } => {
                need_qubit()?;
                spin_rotation(*u, [0.0, 0.0, 1.0])?
            }
            UnitarySpec::RotAxis { u, axis } => {
                need_qubit()?;
                check_unit(axis)?;
                spin_rotation(*u, *axis)?
            }
            UnitarySpec::RotXyPi => {
                need_qubit()?;
                (&pauli(1)? + &pauli(2)?).scale(Complex64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2))
            }
            UnitarySpec::GGroup { u, alpha, gamma } => {
                need_qubit()?;
                let n = alpha.hypot(*gamma);
                if n == 0.0 || !n.is_finite() {
                    return Err(Error::InvalidParameter("g_group needs (α, γ) ≠ 0".into()));
                }
                spin_rotation(*u, [alpha / n, gamma / n, 0.0])?
            }
            UnitarySpec::NumberPhase { u } => {
                need_oscillator()?;
                number_phase(s_dim, *u)
            }
            UnitarySpec::ParityPi => {
                need_oscillator()?;
                let diag: Vec<Complex64> = (0..s_dim)
                    .map(|n| Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
                    .collect();
                ComplexMatrix::from_diagonal(&diag)
            }
            UnitarySpec::EnvRotation { axis, angle } => {
                let mut axis_vec = [0.0; 3];
                *axis_vec
                    .get_mut(axis.wrapping_sub(1))
                    .ok_or_else(|| Error::InvalidParameter(format!("axis {axis} not in 1..=3")))? = 1.0;
                let local = spin_rotation(*angle, axis_vec)?;
                let mut m = ComplexMatrix::identity(1);
                for &i in space.r_indices() {
                    if space.factors()[i].dim != 2 {
                        return Err(Error::InvalidParameter("env_rotation needs qubit R factors".into()));
                    }
                    m = m.kron(&local);
                }
                m
            }
            UnitarySpec::Custom { re, im } => from_parts(re, im, s_dim)?,
            UnitarySpec::EnvCustom { re, im } => from_parts(re, im, space.r_dim())?,
        };
        let defect = m.unitarity_defect()?;
        if defect > UNITARY_TOLERANCE * m.rows() as f64 {
            return Err(Error::InvalidParameter(format!("{} is not unitary (defect {defect:e})", self.name())));
        }
        Ok(m)
    }
}

/// Lift the unitary to the full (S-first) space.
pub fn realize(spec: &UnitarySpec, space: &SpaceSpec) -> Result<Operator> {
    space.require_s_first()?;
    let local = spec.local_matrix(space)?;
    let full = match spec.side() {
        Side::S => local.kron(&ComplexMatrix::identity(space.r_dim())),
        Side::R => ComplexMatrix::identity(space.s_dim()).kron(&local),
    };
    Operator::new(full, space.clone())
}

fn check_unit(axis: &[f64; 3]) -> Result<()> {
    let n2: f64 = axis.iter().map(|x| x * x).sum();
    if !n2.is_finite() || (n2 - 1.0).abs() > UNITARY_TOLERANCE {
        return Err(Error::InvalidParameter(format!("axis {axis:?} is not a unit vector")));
    }
    Ok(())
}

/// `cos(u/2) I − i sin(u/2) n·Σ`.
fn spin_rotation(u: f64, n: [f64; 3]) -> Result<ComplexMatrix> {
    let mut m = ComplexMatrix::identity(2).scale_real((u / 2.0).cos());
    let s = Complex64::new(0.0, -(u / 2.0).sin());
    for (k, &nk) in n.iter().enumerate() {
        m.axpy(s * nk, &pauli(k + 1)?);
    }
    Ok(m)
}

fn number_phase(dim: usize, u: f64) -> ComplexMatrix {
    let diag: Vec<Complex64> = (0..dim).map(|n| Complex64::new(0.0, -u * n as f64).exp()).collect();
    ComplexMatrix::from_diagonal(&diag)
}

fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>], dim: usize) -> Result<ComplexMatrix> {
    let shape_ok = |m: &[Vec<f64>]| m.len() == dim && m.iter().all(|r| r.len() == dim);
    if !shape_ok(re) || !shape_ok(im) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: re.len(),
            context: "custom unitary vs factor block",
        });
    }
    Ok(ComplexMatrix::from_fn(dim, dim, |i, j| Complex64::new(re[i][j], im[i][j])))
}

/// The frame `(X, Y, G)` attached to a unit axis `(u₁, u₂, u₃)`:
/// `X = −u₂Σ₁ + u₁Σ₂`, `Y = −u₁u₃Σ₁ − u₂u₃Σ₂ + (u₁²+u₂²)Σ₃`, `G = u·Σ`.
///
/// `X` and `Y` share the length `√(u₁²+u₂²)`; the poles are rejected
/// because both vanish there.
pub fn axis_frame(axis: [f64; 3]) -> Result<[ComplexMatrix; 3]> {
    let [x, y, g] = frame_vectors(axis)?;
    Ok([bloch_operator(x)?, bloch_operator(y)?, bloch_operator(g)?])
}

/// `v·Σ`.
pub fn bloch_operator(v: [f64; 3]) -> Result<ComplexMatrix> {
    let mut m = ComplexMatrix::zeros(2, 2);
    for (k, &vk) in v.iter().enumerate() {
        m.axpy(Complex64::new(vk, 0.0), &pauli(k + 1)?);
    }
    Ok(m)
}

/// Bloch vectors of `(X, Y, G)` as in [`axis_frame`].
pub fn frame_vectors(axis: [f64; 3]) -> Result<[[f64; 3]; 3]> {
    check_unit(&axis)?;
    let [u1, u2, u3] = axis;
    let rho2 = u1 * u1 + u2 * u2;
    if rho2 < 1e-12 {
        return Err(Error::InvalidParameter("axis frame is degenerate at the poles".into()));
    }
    Ok([[-u2, u1, 0.0], [-u1 * u3, -u2 * u3, rho2], [u1, u2, u3]])
}

/// [`frame_vectors`] with `X` and `Y` scaled to unit length.
pub fn orthonormal_frame(axis: [f64; 3]) -> Result<[[f64; 3]; 3]> {
    let mut f = frame_vectors(axis)?;
    for v in f.iter_mut().take(2) {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= n);
    }
    Ok(f)
}
