use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::reduce::ReducedDynamics;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::model::{ladder, number, pauli, DensityMatrix, SparseOperator};

/// A labelled observable on S.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    pub label: String,
    pub matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(label: impl Into<String>, matrix: ComplexMatrix) -> Self {
        Self {
            label: label.into(),
            matrix,
        }
    }

    /// Named observable on an S space of dimension `s_dim`.
    ///
    /// Qubits: `I`, `S1`, `S2`, `S3`. Oscillators: `I`, `A`, `Adag`, `N`, `A2`.
    pub fn named(label: &str, s_dim: usize) -> Result<Self> {
        let matrix = match (label, s_dim) {
            ("I", _) => ComplexMatrix::identity(s_dim),
            ("S1", 2) => pauli(1)?,
            ("S2", 2) => pauli(2)?,
            ("S3", 2) => pauli(3)?,
            ("A", d) if d > 2 => ladder(d)?,
            ("Adag", d) if d > 2 => ladder(d)?.adjoint(),
            ("N", d) if d > 2 => number(d),
            ("A2", d) if d > 2 => {
                let a = ladder(d)?;
                a.matmul(&a)?
            }
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown observable '{label}' for S dimension {s_dim}"
                )))
            }
        };
        Ok(Self::new(label, matrix))
    }
}

/// Label of one expansion coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Component {
    I,
    S1,
    S2,
    S3,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "residual")]
    Residual,
}

impl Component {
    pub const PAULI: [Component; 4] = [Component::S1, Component::S2, Component::S3, Component::I];
    pub const LADDER: [Component; 4] = [Component::F, Component::G, Component::B, Component::Residual];

    pub fn label(self) -> &'static str {
        match self {
            Component::I => "I",
            Component::S1 => "S1",
            Component::S2 => "S2",
            Component::S3 => "S3",
            Component::F => "f",
            Component::G => "g",
            Component::B => "b",
            Component::Residual => "residual",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "I" => Component::I,
            "S1" => Component::S1,
            "S2" => Component::S2,
            "S3" => Component::S3,
            "f" => Component::F,
            "g" => Component::G,
            "b" => Component::B,
            "residual" => Component::Residual,
            _ => return Err(Error::InvalidParameter(format!("unknown component '{s}'"))),
        })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How reduced operators are expanded into coefficient functions.
#[derive(Clone, Debug, PartialEq)]
pub enum CoefficientBasis {
    /// Qubit S: components on `n_k·Σ` for an orthonormal frame `n_1, n_2, n_3`,
    /// plus the identity.
    Pauli { frame: [[f64; 3]; 3] },
    /// Oscillator S: least-squares fit to `{A, A†, I}` on `levels` low levels
    /// (`None` drops the top two).
    Ladder { levels: Option<usize> },
}

impl CoefficientBasis {
    pub const STANDARD: CoefficientBasis = CoefficientBasis::Pauli {
        frame: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Pauli basis for qubits, ladder basis otherwise.
    pub fn for_dim(s_dim: usize) -> Self {
        if s_dim == 2 {
            Self::STANDARD
        } else {
            CoefficientBasis::Ladder { levels: None }
        }
    }

    pub fn expand(&self, q: &ComplexMatrix) -> Result<Coefficients> {
        match self {
            CoefficientBasis::Pauli { frame } => pauli_coeffs_in(q, frame),
            CoefficientBasis::Ladder { levels } => {
                let l = ladder_coeffs(q, *levels)?;
                Ok(Coefficients(vec![
                    (Component::F, l.f),
                    (Component::G, l.g),
                    (Component::B, l.b),
                    (Component::Residual, Complex64::new(l.residual, 0.0)),
                ]))
            }
        }
    }
}

/// Coefficients of one reduced operator, in component order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coefficients(pub Vec<(Component, Complex64)>);

impl Coefficients {
    pub fn get(&self, c: Component) -> Option<Complex64> {
        self.0.iter().find(|(k, _)| *k == c).map(|(_, v)| *v)
    }
}

/// Standard Pauli coefficients `(Tr QΣ_k / 2, Tr Q / 2)`.
pub fn pauli_coeffs(q: &ComplexMatrix) -> Result<Coefficients> {
    match CoefficientBasis::STANDARD {
        CoefficientBasis::Pauli { frame } => pauli_coeffs_in(q, &frame),
        _ => unreachable!(),
    }
}

fn pauli_coeffs_in(q: &ComplexMatrix, frame: &[[f64; 3]; 3]) -> Result<Coefficients> {
    if q.rows() != 2 || q.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: q.rows().max(q.cols()),
            context: "Pauli expansion needs a qubit operator",
        });
    }
    let sigma = [pauli(1)?, pauli(2)?, pauli(3)?];
    let mut out = Vec::with_capacity(4);
    for (axis, comp) in frame.iter().zip([Component::S1, Component::S2, Component::S3]) {
        let mut f = ComplexMatrix::zeros(2, 2);
        for (k, s) in sigma.iter().enumerate() {
            f.axpy(Complex64::new(axis[k], 0.0), s);
        }
        out.push((comp, q.matmul(&f)?.trace()? / 2.0));
    }
    out.push((Component::I, q.trace()? / 2.0));
    Ok(Coefficients(out))
}

/// Result of [`ladder_coeffs`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderCoeffs {
    pub f: Complex64,
    pub g: Complex64,
    pub b: Complex64,
    pub residual: f64,
}

/// Least-squares projection of `q_red` onto `A f + A† g + b` on the leading
/// `levels` Fock levels. `None` uses all but the top two levels.
///
/// `A`, `A†` and `I` have disjoint supports, so the projection decouples
/// into three independent ratios.
pub fn ladder_coeffs(q_red: &ComplexMatrix, levels: Option<usize>) -> Result<LadderCoeffs> {
    let dim = q_red.dim()?;
    if dim < 5 {
        return Err(Error::InvalidParameter(format!("cutoff {} < 4", dim.saturating_sub(1))));
    }
    let l = levels.unwrap_or(dim - 2);
    if l < 3 || l > dim {
        return Err(Error::InvalidParameter(format!("fit window {l} not in 3..={dim}")));
    }
    let q = q_red.leading_block(l);
    let (mut f_num, mut g_num, mut norm) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0.0);
    for n in 0..l - 1 {
        let s = ((n + 1) as f64).sqrt();
        f_num += q[(n, n + 1)] * s;
        g_num += q[(n + 1, n)] * s;
        norm += s * s;
    }
    let f = f_num / norm;
    let g = g_num / norm;
    let b = q.trace()? / l as f64;
    let a = ladder(l)?;
    let mut rem = q;
    rem.axpy(-f, &a);
    rem.axpy(-g, &a.adjoint());
    rem.axpy(-b, &ComplexMatrix::identity(l));
    Ok(LadderCoeffs {
        f,
        g,
        b,
        residual: rem.hs_norm(),
    })
}

/// Uniform grid of `points` times on `[0, t_max]`.
pub fn uniform_grid(t_max: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 || !t_max.is_finite() || t_max < 0.0 {
        return Err(Error::InvalidParameter(format!("bad time grid ({t_max}, {points})")));
    }
    if points == 1 {
        return Ok(vec![0.0]);
    }
    Ok((0..points).map(|k| t_max * k as f64 / (points - 1) as f64).collect())
}

/// Reduced operators and coefficient expansions over a time grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReducedTrajectory {
    pub times: Vec<f64>,
    pub observables: Vec<String>,
    /// Indexed `[time][observable]`.
    pub reduced_ops: Vec<Vec<ComplexMatrix>>,
    /// Indexed `[time][observable]`.
    pub coeffs: Vec<Vec<Coefficients>>,
}

impl ReducedTrajectory {
    pub fn observable_index(&self, label: &str) -> Result<usize> {
        self.observables
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| Error::InvalidParameter(format!("observable '{label}' not in trajectory")))
    }

    /// One coefficient as a function of time.
    pub fn series(&self, label: &str, component: Component) -> Result<Vec<Complex64>> {
        let o = self.observable_index(label)?;
        self.coeffs
            .iter()
            .map(|row| {
                row[o]
                    .get(component)
                    .ok_or_else(|| Error::InvalidParameter(format!("component {component} not computed")))
            })
            .collect()
    }

    /// CSV with columns `t, observable, component, re, im`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["t", "observable", "component", "re", "im"])?;
        for (t, row) in self.times.iter().zip(&self.coeffs) {
            for (label, coeffs) in self.observables.iter().zip(row) {
                for (c, v) in &coeffs.0 {
                    w.write_record([
                        format!("{t:.17e}"),
                        label.clone(),
                        c.label().to_string(),
                        format!("{:.17e}", v.re),
                        format!("{:.17e}", v.im),
                    ])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Trajectory with the default coefficient basis for the S dimension.
pub fn trajectory(
    h: &SparseOperator,
    rho_r: &DensityMatrix,
    observables: &[Observable],
    t_grid: &[f64],
) -> Result<ReducedTrajectory> {
    let dynamics = ReducedDynamics::new(h, rho_r)?;
    trajectory_with(&dynamics, observables, t_grid, &CoefficientBasis::for_dim(h.space.s_dim()))
}

pub fn trajectory_with(
    dynamics: &ReducedDynamics,
    observables: &[Observable],
    t_grid: &[f64],
    basis: &CoefficientBasis,
) -> Result<ReducedTrajectory> {
    let maps = dynamics.over(t_grid)?;
    let rows: Vec<(Vec<ComplexMatrix>, Vec<Coefficients>)> = maps
        .par_iter()
        .map(|map| {
            let ops = observables.iter().map(|o| map.apply(&o.matrix)).collect::<Result<Vec<_>>>()?;
            let coeffs = ops.iter().map(|q| basis.expand(q)).collect::<Result<Vec<_>>>()?;
            Ok((ops, coeffs))
        })
        .collect::<Result<_>>()?;
    let (reduced_ops, coeffs) = rows.into_iter().unzip();
    Ok(ReducedTrajectory {
        times: t_grid.to_vec(),
        observables: observables.iter().map(|o| o.label.clone()).collect(),
        reduced_ops,
        coeffs,
    })
}
