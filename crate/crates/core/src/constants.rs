//! Dependent constants of the motion: observables whose reduced Heisenberg
//! image stays equal to themselves for a given environment state.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::ReducedDynamics;
use crate::error::{Error, Result};
use crate::linalg::{hs_distance, ComplexMatrix, HermitianEigen, HERMITIAN_TOLERANCE};
use crate::model::{pauli, DensityMatrix, SparseOperator};
use crate::symmetry::bloch_operator;
use crate::verdict::{Tolerances, Verdict};

/// Eigenvalues closer than this share a spectral projector.
pub const EIGENVALUE_CLUSTER: f64 = 1e-9;

/// Default number of quasi-uniform scan directions.
pub const DEFAULT_SCAN_DIRECTIONS: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectorDefect {
    pub eigenvalue: f64,
    pub max_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub observable: String,
    pub max_defect: f64,
    pub defect_by_time: Vec<f64>,
    pub projector_defects: Vec<ProjectorDefect>,
    pub verdict: Verdict,
}

fn require_hermitian(q: &ComplexMatrix) -> Result<()> {
    q.ensure_hermitian(HERMITIAN_TOLERANCE)
}

/// `‖Tr_R[ρ_R e^{itH} q e^{-itH}] − q‖_HS`.
pub fn constant_defect(h: &SparseOperator, rho_r: &DensityMatrix, q_s: &ComplexMatrix, t: f64) -> Result<f64> {
    require_hermitian(q_s)?;
    let red = ReducedDynamics::new(h, rho_r)?.at(t)?.apply(q_s)?;
    hs_distance(&red, q_s)
}

/// Spectral projectors of a Hermitian matrix as `(eigenvalue, projector)`.
pub fn spectral_projectors(q: &ComplexMatrix) -> Result<Vec<(f64, ComplexMatrix)>> {
    require_hermitian(q)?;
    let eig = HermitianEigen::new(q)?;
    let n = eig.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.values[a].total_cmp(&eig.values[b]));
    let mut out: Vec<(f64, ComplexMatrix, usize)> = Vec::new();
    for k in order {
        let lambda = eig.values[k];
        let v: Vec<Complex64> = (0..n).map(|i| eig.vectors[(i, k)]).collect();
        let outer = ComplexMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
        match out.last_mut() {
            Some((mean, p, count)) if (lambda - *mean).abs() < EIGENVALUE_CLUSTER => {
                *p = &*p + &outer;
                *mean = (*mean * *count as f64 + lambda) / (*count + 1) as f64;
                *count += 1;
            }
            _ => out.push((lambda, outer, 1)),
        }
    }
    Ok(out.into_iter().map(|(l, p, _)| (l, p)).collect())
}

/// Defect of each spectral projector of `q_s` at time `t`.
pub fn constant_defect_spectral(
    h: &SparseOperator,
    rho_r: &DensityMatrix,
    q_s: &ComplexMatrix,
    t: f64,
) -> Result<Vec<ProjectorDefect>> {
    let map = ReducedDynamics::new(h, rho_r)?.at(t)?;
    spectral_projectors(q_s)?
        .into_iter()
        .map(|(eigenvalue, p)| {
            Ok(ProjectorDefect {
                eigenvalue,
                max_defect: hs_distance(&map.apply(&p)?, &p)?,
            })
        })
        .collect()
}

/// Check `q_s` and each of its spectral projectors over a time grid.
pub fn check_constant(
    dynamics: &ReducedDynamics,
    label: &str,
    q_s: &ComplexMatrix,
    t_grid: &[f64],
    tolerances: Tolerances,
) -> Result<ConstantReport> {
    let projectors = spectral_projectors(q_s)?;
    let maps = dynamics.over(t_grid)?;
    let rows: Vec<(f64, Vec<f64>)> = maps
        .par_iter()
        .map(|map| {
            let d = hs_distance(&map.apply(q_s)?, q_s)?;
            let pd = projectors
                .iter()
                .map(|(_, p)| hs_distance(&map.apply(p)?, p))
                .collect::<Result<Vec<_>>>()?;
            Ok((d, pd))
        })
        .collect::<Result<_>>()?;
    let defect_by_time: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let max_defect = defect_by_time.iter().copied().fold(0.0, f64::max);
    let projector_defects: Vec<ProjectorDefect> = projectors
        .iter()
        .enumerate()
        .map(|(k, (lambda, _))| ProjectorDefect {
            eigenvalue: *lambda,
            max_defect: rows.iter().map(|r| r.1[k]).fold(0.0, f64::max),
        })
        .collect();
    let worst = projector_defects.iter().map(|p| p.max_defect).fold(max_defect, f64::max);
    Ok(ConstantReport {
        observable: label.to_string(),
        max_defect,
        defect_by_time,
        projector_defects,
        verdict: tolerances.classify(worst),
    })
}

/// `n` quasi-uniform unit vectors (Fibonacci lattice).
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// One scanned Bloch direction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionDefect {
    pub direction: [f64; 3],
    pub label: Option<String>,
    pub max_defect: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    NoneConstant,
    AllConstant,
    /// Some, but not all, scanned directions are constant.
    Directions { constant: Vec<[f64; 3]> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub classification: Classification,
    pub min_defect: f64,
    pub max_defect: f64,
    pub directions: Vec<DirectionDefect>,
}

impl ScanResult {
    /// The scanned entry closest to `direction` (up to sign).
    pub fn nearest(&self, direction: [f64; 3]) -> Option<&DirectionDefect> {
        let dot = |a: [f64; 3]| (a[0] * direction[0] + a[1] * direction[1] + a[2] * direction[2]).abs();
        self.directions.iter().max_by(|a, b| dot(a.direction).total_cmp(&dot(b.direction)))
    }

    pub fn find(&self, label: &str) -> Option<&DirectionDefect> {
        self.directions.iter().find(|d| d.label.as_deref() == Some(label))
    }

    /// CSV with columns `x, y, z, label, max_defect, verdict`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["x", "y", "z", "label", "max_defect", "verdict"])?;
        for d in &self.directions {
            let verdict = serde_json::to_value(d.verdict)?;
            w.write_record([
                format!("{:.17e}", d.direction[0]),
                format!("{:.17e}", d.direction[1]),
                format!("{:.17e}", d.direction[2]),
                d.label.clone().unwrap_or_default(),
                format!("{:.17e}", d.max_defect),
                verdict.as_str().unwrap_or_default().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Scan traceless qubit observables `n·Σ` for constancy.
///
/// Scans `samples` Fibonacci directions, the three axes and `extra`
/// labelled directions. The reduced map is linear, so only the images of
/// `Σ₁, Σ₂, Σ₃` are computed.
pub fn scan_constants(
    dynamics: &ReducedDynamics,
    t_grid: &[f64],
    tolerances: Tolerances,
    samples: usize,
    extra: &[(String, [f64; 3])],
) -> Result<ScanResult> {
    if dynamics.space().s_dim() != 2 {
        return Err(Error::Unsupported("constant scans need a qubit S".into()));
    }
    let sigma = [pauli(1)?, pauli(2)?, pauli(3)?];
    let images: Vec<[ComplexMatrix; 3]> = dynamics
        .over(t_grid)?
        .par_iter()
        .map(|m| Ok([m.apply(&sigma[0])?, m.apply(&sigma[1])?, m.apply(&sigma[2])?]))
        .collect::<Result<_>>()?;
    let mut candidates: Vec<(Option<String>, [f64; 3])> = vec![
        (Some("S1".into()), [1.0, 0.0, 0.0]),
        (Some("S2".into()), [0.0, 1.0, 0.0]),
        (Some("S3".into()), [0.0, 0.0, 1.0]),
    ];
    for (label, v) in extra {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidParameter(format!("scan direction '{label}' has zero length")));
        }
        candidates.push((Some(label.clone()), [v[0] / n, v[1] / n, v[2] / n]));
    }
    candidates.extend(fibonacci_sphere(samples).into_iter().map(|d| (None, d)));
    let directions: Vec<DirectionDefect> = candidates
        .into_par_iter()
        .map(|(label, n)| {
            let q = bloch_operator(n)?;
            let mut worst: f64 = 0.0;
            for img in &images {
                let mut red = ComplexMatrix::zeros(2, 2);
                for k in 0..3 {
                    red.axpy(Complex64::new(n[k], 0.0), &img[k]);
                }
                worst = worst.max(hs_distance(&red, &q)?);
            }
            Ok(DirectionDefect {
                direction: n,
                label,
                max_defect: worst,
                verdict: tolerances.classify(worst),
            })
        })
        .collect::<Result<_>>()?;
    let holds: Vec<[f64; 3]> = directions
        .iter()
        .filter(|d| d.verdict == Verdict::Holds)
        .map(|d| d.direction)
        .collect();
    let classification = if holds.is_empty() {
        Classification::NoneConstant
    } else if holds.len() == directions.len() {
        Classification::AllConstant
    } else {
        Classification::Directions { constant: holds }
    };
    let min_defect = directions.iter().map(|d| d.max_defect).fold(f64::INFINITY, f64::min);
    let max_defect = directions.iter().map(|d| d.max_defect).fold(0.0, f64::max);
    Ok(ScanResult {
        classification,
        min_defect,
        max_defect,
        directions,
    })
}
