//! Builders for the Hamiltonian families used by the scenarios.
//!
//! Every builder returns a sparse Hermitian operator on an S-first layout.
//! Oscillator families use truncated ladder matrices, so truncation artifacts
//! live in the top Fock levels.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, HERMITIAN_TOLERANCE};
use crate::model::{ladder_sparse, lift_sparse, pauli, sigma_pm, Factor, Sign, SpaceSpec, SparseOperator};

pub const MAX_SPIN_STAR_QUBITS: usize = 6;
pub const MAX_BATH_OSCILLATORS: usize = 2;
pub const MAX_BATH_CUTOFF: usize = 12;

/// One Hamiltonian family with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum HamiltonianSpec {
    /// `½[γ₁Σ₁Ξ₁ + γ₂Σ₂Ξ₂ + γ₃Σ₃Ξ₃]` on two qubits.
    Xyz { gamma: [f64; 3] },
    /// `αΣ₁ + γΣ₂Ξ₂` on two qubits.
    Tilted { alpha: f64, gamma: f64 },
    /// `ω Σ_k (Σ₊Ξ₋⁽ᵏ⁾ + Σ₋Ξ₊⁽ᵏ⁾)`, one central qubit and `k` bath qubits.
    SpinStar { omega: f64, k: usize },
    /// `(ω/2)(A+B)†(A+B) + (η/2)(A−B)†(A−B)` on two oscillators.
    Beamsplitter { omega: f64, eta: f64, cutoff: usize },
    /// Two-mode squeezer on the normal modes `(A±B)/√2`:
    /// `i(ω/4)[(A+B)†² − (A+B)²] + i(η/4)[(A−B)†² − (A−B)²]`.
    ///
    /// The ¼ (rather than ½) compensates `[A+B, (A+B)†] = 2`, so that
    /// `A+B` evolves as `(A+B)cosh ωt + (A+B)†sinh ωt`.
    Squeezer { omega: f64, eta: f64, cutoff: usize },
    /// `ω(Σ₊B + Σ₋B†)`, qubit and one oscillator.
    JaynesCummings { omega: f64, cutoff: usize },
    /// `ω Σ_k (Σ₊B_k + Σ₋B_k†)`, qubit and `k` oscillators.
    SpinBosonMany { omega: f64, k: usize, cutoff: usize },
    /// `ω(Σ₂ − Σ₂Ξ₂)`, which vanishes on the Ξ₂ = +1 eigenspace.
    Decoupler { omega: f64 },
}

impl HamiltonianSpec {
    pub fn family(&self) -> &'static str {
        match self {
            HamiltonianSpec::Xyz { .. } => "xyz",
            HamiltonianSpec::Tilted { .. } => "tilted",
            HamiltonianSpec::SpinStar { .. } => "spin_star",
            HamiltonianSpec::Beamsplitter { .. } => "beamsplitter",
            HamiltonianSpec::Squeezer { .. } => "squeezer",
            HamiltonianSpec::JaynesCummings { .. } => "jaynes_cummings",
            HamiltonianSpec::SpinBosonMany { .. } => "spin_boson_many",
            HamiltonianSpec::Decoupler { .. } => "decoupler",
        }
    }

    fn reals(&self) -> Vec<f64> {
        match *self {
            HamiltonianSpec::Xyz { gamma } => gamma.to_vec(),
            HamiltonianSpec::Tilted { alpha, gamma } => vec![alpha, gamma],
            HamiltonianSpec::SpinStar { omega, .. }
            | HamiltonianSpec::JaynesCummings { omega, .. }
            | HamiltonianSpec::SpinBosonMany { omega, .. }
            | HamiltonianSpec::Decoupler { omega } => vec![omega],
            HamiltonianSpec::Beamsplitter { omega, eta, .. } | HamiltonianSpec::Squeezer { omega, eta, .. } => {
                vec![omega, eta]
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(x) = self.reals().into_iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("{}: non-finite parameter {x}", self.family())));
        }
        match *self {
            HamiltonianSpec::SpinStar { k, .. } if k == 0 || k > MAX_SPIN_STAR_QUBITS => Err(Error::InvalidParameter(
                format!("spin_star: k = {k} outside 1..={MAX_SPIN_STAR_QUBITS}"),
            )),
            HamiltonianSpec::SpinBosonMany { k, .. } if k == 0 || k > MAX_BATH_OSCILLATORS => Err(
                Error::InvalidParameter(format!("spin_boson_many: k = {k} outside 1..={MAX_BATH_OSCILLATORS}")),
            ),
            HamiltonianSpec::SpinBosonMany { cutoff, .. } if cutoff > MAX_BATH_CUTOFF => Err(Error::InvalidParameter(
                format!("spin_boson_many: cutoff {cutoff} above {MAX_BATH_CUTOFF}"),
            )),
            _ => match self.cutoff() {
                Some(c) if c < 2 => Err(Error::InvalidParameter(format!("{}: cutoff {c} below 2", self.family()))),
                _ => Ok(()),
            },
        }
    }

    pub fn cutoff(&self) -> Option<usize> {
        match *self {
            HamiltonianSpec::Beamsplitter { cutoff, .. }
            | HamiltonianSpec::Squeezer { cutoff, .. }
            | HamiltonianSpec::JaynesCummings { cutoff, .. }
            | HamiltonianSpec::SpinBosonMany { cutoff, .. } => Some(cutoff),
            _ => None,
        }
    }

    /// Same family and parameters with a different Fock cutoff.
    pub fn with_cutoff(&self, new_cutoff: usize) -> Result<Self> {
        let mut out = self.clone();
        match &mut out {
            HamiltonianSpec::Beamsplitter { cutoff, .. }
            | HamiltonianSpec::Squeezer { cutoff, .. }
            | HamiltonianSpec::JaynesCummings { cutoff, .. }
            | HamiltonianSpec::SpinBosonMany { cutoff, .. } => *cutoff = new_cutoff,
            _ => return Err(Error::Unsupported(format!("{} has no oscillator cutoff", self.family()))),
        }
        Ok(out)
    }

    /// Largest coupling magnitude; sets the default time scale.
    pub fn max_coupling(&self) -> f64 {
        let m = self.reals().into_iter().map(f64::abs).fold(0.0, f64::max);
        match *self {
            // the Σ± convention doubles the effective coupling
            HamiltonianSpec::SpinStar { omega, .. }
            | HamiltonianSpec::JaynesCummings { omega, .. }
            | HamiltonianSpec::SpinBosonMany { omega, .. } => 2.0 * omega.abs(),
            HamiltonianSpec::Tilted { alpha, gamma } => alpha.hypot(gamma),
            _ => m,
        }
    }

    pub fn is_oscillator_subsystem(&self) -> bool {
        matches!(self, HamiltonianSpec::Beamsplitter { .. } | HamiltonianSpec::Squeezer { .. })
    }
}

/// The factor layout for a family, S first.
pub fn space_of(spec: &HamiltonianSpec) -> Result<SpaceSpec> {
    spec.validate()?;
    match *spec {
        HamiltonianSpec::Xyz { .. } | HamiltonianSpec::Tilted { .. } | HamiltonianSpec::Decoupler { .. } => {
            SpaceSpec::s_first(vec![Factor::qubit("s")], vec![Factor::qubit("r")])
        }
        HamiltonianSpec::SpinStar { k, .. } => SpaceSpec::s_first(
            vec![Factor::qubit("s")],
            (1..=k).map(|i| Factor::qubit(format!("r{i}"))).collect(),
        ),
        HamiltonianSpec::Beamsplitter { cutoff, .. } | HamiltonianSpec::Squeezer { cutoff, .. } => {
            SpaceSpec::s_first(vec![Factor::oscillator("a", cutoff)], vec![Factor::oscillator("b", cutoff)])
        }
        HamiltonianSpec::JaynesCummings { cutoff, .. } => {
            SpaceSpec::s_first(vec![Factor::qubit("s")], vec![Factor::oscillator("b", cutoff)])
        }
        HamiltonianSpec::SpinBosonMany { k, cutoff, .. } => SpaceSpec::s_first(
            vec![Factor::qubit("s")],
            (1..=k).map(|i| Factor::oscillator(format!("b{i}"), cutoff)).collect(),
        ),
    }
}

fn dense_local(m: crate::linalg::ComplexMatrix) -> SparseMatrix {
    SparseMatrix::from_dense(&m).expect("square local operator")
}

fn on(local: &SparseMatrix, factor: usize, space: &SpaceSpec) -> Result<SparseMatrix> {
    Ok(lift_sparse(local, factor, space)?.matrix)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Build the Hamiltonian; the result is checked Hermitian to `1e-10`.
pub fn build(spec: &HamiltonianSpec) -> Result<SparseOperator> {
    let space = space_of(spec)?;
    let sigma = |k: usize| dense_local(pauli(k).expect("valid axis"));
    let splus = dense_local(sigma_pm(Sign::Plus));
    let sminus = dense_local(sigma_pm(Sign::Minus));

    let matrix = match *spec {
        HamiltonianSpec::Xyz { gamma } => {
            let mut h = SparseMatrix::zeros(space.total_dim());
            for (k, &g) in gamma.iter().enumerate() {
                let term = &on(&sigma(k + 1), 0, &space)? * &on(&sigma(k + 1), 1, &space)?;
                h = &h + &term.scale_real(0.5 * g);
            }
            h
        }
        HamiltonianSpec::Tilted { alpha, gamma } => {
            let s1 = on(&sigma(1), 0, &space)?;
            let s2x2 = &on(&sigma(2), 0, &space)? * &on(&sigma(2), 1, &space)?;
            &s1.scale_real(alpha) + &s2x2.scale_real(gamma)
        }
        HamiltonianSpec::SpinStar { omega, k } => {
            let sp = on(&splus, 0, &space)?;
            let sm = on(&sminus, 0, &space)?;
            let mut h = SparseMatrix::zeros(space.total_dim());
            for f in 1..=k {
                let xp = on(&splus, f, &space)?;
                let xm = on(&sminus, f, &space)?;
                h = &h + &(&(&sp * &xm) + &(&sm * &xp));
            }
            h.scale_real(omega)
        }
        HamiltonianSpec::Beamsplitter { omega, eta, cutoff } => {
            let (c, d) = mode_sums(cutoff, &space)?;
            let cc = &c.adjoint() * &c;
            let dd = &d.adjoint() * &d;
            &cc.scale_real(0.5 * omega) + &dd.scale_real(0.5 * eta)
        }
        HamiltonianSpec::Squeezer { omega, eta, cutoff } => {
            let (c, d) = mode_sums(cutoff, &space)?;
            let squeeze = |m: &SparseMatrix| {
                let md = m.adjoint();
                &(&md * &md) - &(m * m)
            };
            &squeeze(&c).scale(Complex64::new(0.0, 0.25 * omega)) + &squeeze(&d).scale(Complex64::new(0.0, 0.25 * eta))
        }
        HamiltonianSpec::JaynesCummings { omega, cutoff } => {
            let b = on(&ladder_sparse(cutoff + 1)?, 1, &space)?;
            exchange(&on(&splus, 0, &space)?, &on(&sminus, 0, &space)?, &b).scale_real(omega)
        }
        HamiltonianSpec::SpinBosonMany { omega, k, cutoff } => {
            let sp = on(&splus, 0, &space)?;
            let sm = on(&sminus, 0, &space)?;
            let a = ladder_sparse(cutoff + 1)?;
            let mut h = SparseMatrix::zeros(space.total_dim());
            for f in 1..=k {
                h = &h + &exchange(&sp, &sm, &on(&a, f, &space)?);
            }
            h.scale_real(omega)
        }
        HamiltonianSpec::Decoupler { omega } => {
            let s2 = on(&sigma(2), 0, &space)?;
            let x2 = on(&sigma(2), 1, &space)?;
            (&s2 - &(&s2 * &x2)).scale(real(omega))
        }
    };
    matrix.ensure_hermitian(HERMITIAN_TOLERANCE)?;
    SparseOperator::new(matrix, space)
}

/// `Σ₊B + Σ₋B†`.
fn exchange(sp: &SparseMatrix, sm: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    &(sp * b) + &(sm * &b.adjoint())
}

/// `(A + B, A − B)` on the two-oscillator space.
fn mode_sums(cutoff: usize, space: &SpaceSpec) -> Result<(SparseMatrix, SparseMatrix)> {
    let lower = ladder_sparse(cutoff + 1)?;
    let a = on(&lower, 0, space)?;
    let b = on(&lower, 1, space)?;
    Ok((&a + &b, &a - &b))
}
