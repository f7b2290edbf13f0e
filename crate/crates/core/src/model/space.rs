use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, ComplexMatrix};

/// One tensor factor of a composite space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub label: String,
    pub dim: usize,
}

impl Factor {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        Self {
            label: label.into(),
            dim,
        }
    }

    pub fn qubit(label: impl Into<String>) -> Self {
        Self::new(label, 2)
    }

    /// Oscillator truncated at `cutoff`, i.e. Fock levels `0..=cutoff`.
    pub fn oscillator(label: impl Into<String>, cutoff: usize) -> Self {
        Self::new(label, cutoff + 1)
    }
}

/// Ordered tensor factors with the subsystem (S) / environment (R) split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    factors: Vec<Factor>,
    s_indices: Vec<usize>,
    r_indices: Vec<usize>,
}

impl SpaceSpec {
    /// `s_indices` names the subsystem factors; every other factor is R.
    pub fn new(factors: Vec<Factor>, s_indices: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpace("no factors".into()));
        }
        if let Some(f) = factors.iter().find(|f| f.dim < 2) {
            return Err(Error::InvalidSpace(format!("factor '{}' has dimension {} < 2", f.label, f.dim)));
        }
        let mut seen = vec![false; factors.len()];
        for &i in &s_indices {
            if i >= factors.len() {
                return Err(Error::InvalidSpace(format!("S index {i} out of range")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidSpace(format!("S index {i} repeated")));
            }
        }
        let r_indices = (0..factors.len()).filter(|&i| !seen[i]).collect();
        Ok(Self {
            factors,
            s_indices,
            r_indices,
        })
    }

    /// S factors first, then R factors: the layout every builder uses.
    pub fn s_first(s: Vec<Factor>, r: Vec<Factor>) -> Result<Self> {
        let ns = s.len();
        let mut factors = s;
        factors.extend(r);
        Self::new(factors, (0..ns).collect())
    }

    /// A space made of R factors only (used for environment states).
    pub fn environment_only(r: Vec<Factor>) -> Result<Self> {
        Self::new(r, Vec::new())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn s_indices(&self) -> &[usize] {
        &self.s_indices
    }

    pub fn r_indices(&self) -> &[usize] {
        &self.r_indices
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    pub fn s_dim(&self) -> usize {
        self.s_indices.iter().map(|&i| self.factors[i].dim).product()
    }

    pub fn r_dim(&self) -> usize {
        self.r_indices.iter().map(|&i| self.factors[i].dim).product()
    }

    /// True when all S factors precede all R factors.
    pub fn is_s_first(&self) -> bool {
        self.s_indices.iter().enumerate().all(|(k, &i)| k == i)
    }

    pub fn require_s_first(&self) -> Result<()> {
        if self.is_s_first() {
            Ok(())
        } else {
            Err(Error::InvalidSpace("S factors must precede R factors".into()))
        }
    }

    /// The R factors as a space of their own.
    pub fn environment(&self) -> Result<SpaceSpec> {
        Self::environment_only(self.r_indices.iter().map(|&i| self.factors[i].clone()).collect())
    }

    /// The S factors as a space of their own (all marked S).
    pub fn subsystem(&self) -> Result<SpaceSpec> {
        let s: Vec<Factor> = self.s_indices.iter().map(|&i| self.factors[i].clone()).collect();
        let n = s.len();
        Self::new(s, (0..n).collect())
    }

    /// Same layout with one factor resized.
    pub fn with_factor_dim(&self, factor: usize, dim: usize) -> Result<SpaceSpec> {
        let mut factors = self.factors.clone();
        factors
            .get_mut(factor)
            .ok_or_else(|| Error::InvalidSpace(format!("factor {factor} out of range")))?
            .dim = dim;
        Self::new(factors, self.s_indices.clone())
    }

    pub fn partial_trace(&self, q: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
        partial_trace(q, &self.dims(), keep)
    }

    /// `Tr_R q`.
    pub fn trace_out_environment(&self, q: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.partial_trace(q, &self.s_indices)
    }
}
