use serde::{Deserialize, Serialize};

use crate::dynamics::Component;
use crate::error::{Error, Result};
use crate::hamiltonians::{space_of, HamiltonianSpec};
use crate::model::{env_state, EnvState};
use crate::symmetry::{frame_vectors, FormTemplate, UnitarySpec};
use crate::verdict::{Tolerances, Verdict};

/// Uniform grid on `[0, t_max]`; `t_max` defaults to one period `2π / max coupling`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default)]
    pub t_max: Option<f64>,
    #[serde(default = "default_points")]
    pub points: usize,
}

fn default_points() -> usize {
    101
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            t_max: None,
            points: default_points(),
        }
    }
}

/// A labelled Bloch direction for the constants scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelledDirection {
    pub label: String,
    pub direction: [f64; 3],
}

/// A published claim that an observable is (or is not) constant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstancyClaim {
    pub observable: String,
    pub constant: bool,
    #[serde(default)]
    pub source: String,
}

/// A coefficient function expected to vanish on the whole grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRef {
    pub observable: String,
    pub component: Component,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    NoneConstant,
    AllConstant,
    Directions,
}

/// Expected outcomes; a run exits successfully iff all of them hold.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    /// One verdict per entry of `unitaries`, or empty.
    #[serde(default)]
    pub symmetries: Vec<Verdict>,
    #[serde(default)]
    pub templates_hold: Vec<String>,
    #[serde(default)]
    pub templates_fail: Vec<String>,
    #[serde(default)]
    pub classification: Option<ClassKind>,
    /// Labelled scan directions expected constant / not constant.
    #[serde(default)]
    pub constant: Vec<String>,
    #[serde(default)]
    pub not_constant: Vec<String>,
    #[serde(default)]
    pub zero_components: Vec<ComponentRef>,
    #[serde(default)]
    pub max_leakage: Option<f64>,
    /// Verdicts for `constant_checks`, in order, or empty.
    #[serde(default)]
    pub constant_checks: Vec<Verdict>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        self == &Self::default()
    }
}

/// A single scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub hamiltonian: HamiltonianSpec,
    pub env_state: EnvState,
    /// Observable labels; defaults to `S1, S2, S3` (qubit), `X, Y, G` (with a
    /// frame) or `A` (oscillator).
    #[serde(default)]
    pub observables: Vec<String>,
    #[serde(default)]
    pub unitaries: Vec<UnitarySpec>,
    /// Built-in template names.
    #[serde(default)]
    pub templates: Vec<String>,
    #[serde(default)]
    pub t_grid: GridSpec,
    #[serde(default)]
    pub constants_scan: bool,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub cutoff_bump: usize,
    /// Qubit S: expand coefficients in the `(X, Y, G)` frame of this axis.
    #[serde(default)]
    pub frame_axis: Option<[f64; 3]>,
    /// Oscillator S: Fock levels used by the coefficient fit.
    #[serde(default)]
    pub coeff_levels: Option<usize>,
    /// Oscillator S: number of low Fock levels propagated.
    #[serde(default)]
    pub s_window: Option<usize>,
    #[serde(default)]
    pub scan_directions: Option<usize>,
    #[serde(default)]
    pub scan_extra: Vec<LabelledDirection>,
    /// Observables checked individually for constancy (with projectors).
    #[serde(default)]
    pub constant_checks: Vec<String>,
    #[serde(default)]
    pub claims: Vec<ConstancyClaim>,
    /// Compare Σ₃ against the two-level prediction (Jaynes–Cummings, vacuum).
    #[serde(default)]
    pub two_level_oracle: bool,
    #[serde(default)]
    pub expect: Expectations,
}

const QUBIT_LABELS: [&str; 4] = ["I", "S1", "S2", "S3"];
const FRAME_LABELS: [&str; 3] = ["X", "Y", "G"];
const OSC_LABELS: [&str; 5] = ["I", "A", "Adag", "N", "A2"];

impl ScenarioConfig {
    /// Parse JSON, reporting the line and column of any error.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn is_qubit(&self) -> bool {
        !self.hamiltonian.is_oscillator_subsystem()
    }

    pub fn observable_labels(&self) -> Vec<String> {
        if !self.observables.is_empty() {
            return self.observables.clone();
        }
        let labels: &[&str] = match (self.is_qubit(), self.frame_axis.is_some()) {
            (true, false) => &["S1", "S2", "S3"],
            (true, true) => &FRAME_LABELS,
            (false, _) => &["A"],
        };
        labels.iter().map(|s| s.to_string()).collect()
    }

    pub fn resolved_templates(&self) -> Result<Vec<FormTemplate>> {
        self.templates
            .iter()
            .map(|name| {
                let t = FormTemplate::builtin(name)?;
                Ok(match self.frame_axis {
                    Some(_) => t.relabel(&["S1", "S2", "S3"], &FRAME_LABELS),
                    None => t,
                })
            })
            .collect()
    }

    pub fn grid_t_max(&self) -> f64 {
        self.t_grid.t_max.unwrap_or_else(|| {
            let c = self.hamiltonian.max_coupling();
            if c > 0.0 {
                2.0 * std::f64::consts::PI / c
            } else {
                1.0
            }
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        self.tolerances.validate().map_err(|e| Error::Config(e.to_string()))?;
        if self.tolerances.accept >= self.tolerances.reject {
            return bad("tolerances: accept must be below reject".into());
        }
        if self.t_grid.points == 0 {
            return bad("t_grid.points must be positive".into());
        }
        if let Some(t) = self.t_grid.t_max {
            if !(t.is_finite() && t > 0.0) {
                return bad(format!("t_grid.t_max must be positive, got {t}"));
            }
        }
        let space = space_of(&self.hamiltonian).map_err(|e| Error::Config(format!("hamiltonian: {e}")))?;
        env_state(&self.env_state, &space).map_err(|e| Error::Config(format!("env_state: {e}")))?;
        let s_dim = space.s_dim();
        let known: Vec<&str> = match (self.is_qubit(), self.frame_axis.is_some()) {
            (true, false) => QUBIT_LABELS.to_vec(),
            (true, true) => QUBIT_LABELS.iter().chain(FRAME_LABELS.iter()).copied().collect(),
            (false, _) => OSC_LABELS.to_vec(),
        };
        let labels = self.observable_labels();
        for l in labels.iter().chain(&self.constant_checks).chain(self.claims.iter().map(|c| &c.observable)) {
            if !known.contains(&l.as_str()) {
                return bad(format!("unknown observable '{l}' (expected one of {known:?})"));
            }
        }
        if let Some(axis) = self.frame_axis {
            if !self.is_qubit() {
                return bad("frame_axis needs a qubit subsystem".into());
            }
            frame_vectors(axis).map_err(|e| Error::Config(format!("frame_axis: {e}")))?;
        }
        for u in &self.unitaries {
            u.local_matrix(&space).map_err(|e| Error::Config(format!("unitary {}: {e}", u.name())))?;
        }
        for t in self.resolved_templates().map_err(|e| Error::Config(e.to_string()))? {
            for o in t.observables() {
                if !labels.iter().any(|l| l == o) {
                    return bad(format!("template {} needs observable '{o}'", t.name));
                }
            }
        }
        if self.is_qubit() && (self.coeff_levels.is_some() || self.s_window.is_some()) {
            return bad("coeff_levels and s_window apply to oscillator subsystems only".into());
        }
        if let Some(w) = self.s_window {
            if w < 3 || w > s_dim {
                return bad(format!("s_window {w} not in 3..={s_dim}"));
            }
        }
        if let Some(l) = self.coeff_levels {
            let limit = self.s_window.unwrap_or(s_dim);
            if l < 3 || l > limit {
                return bad(format!("coeff_levels {l} not in 3..={limit}"));
            }
        }
        if self.constants_scan && !self.is_qubit() {
            return bad("constants_scan needs a qubit subsystem".into());
        }
        if self.cutoff_bump > 0 && self.hamiltonian.cutoff().is_none() {
            return bad(format!("cutoff_bump set but {} has no cutoff", self.hamiltonian.family()));
        }
        if self.two_level_oracle
            && !(matches!(self.hamiltonian, HamiltonianSpec::JaynesCummings { .. })
                && self.env_state == EnvState::Fock { n: 0 })
        {
            return bad("two_level_oracle needs jaynes_cummings with fock n = 0".into());
        }
        let e = &self.expect;
        if !e.symmetries.is_empty() && e.symmetries.len() != self.unitaries.len() {
            return bad(format!(
                "expect.symmetries has {} entries for {} unitaries",
                e.symmetries.len(),
                self.unitaries.len()
            ));
        }
        if !e.constant_checks.is_empty() && e.constant_checks.len() != self.constant_checks.len() {
            return bad("expect.constant_checks must match constant_checks".into());
        }
        for name in e.templates_hold.iter().chain(&e.templates_fail) {
            if !self.templates.contains(name) {
                return bad(format!("expected template '{name}' is not in templates"));
            }
        }
        for c in &e.zero_components {
            if !labels.contains(&c.observable) {
                return bad(format!("zero component refers to unknown observable '{}'", c.observable));
            }
        }
        let scan_labels: Vec<&str> = ["S1", "S2", "S3"]
            .into_iter()
            .chain(self.scan_extra.iter().map(|d| d.label.as_str()))
            .collect();
        for l in e.constant.iter().chain(&e.not_constant) {
            if !scan_labels.contains(&l.as_str()) {
                return bad(format!("scan direction '{l}' is not defined"));
            }
        }
        if (e.classification.is_some() || !e.constant.is_empty() || !e.not_constant.is_empty()) && !self.constants_scan {
            return bad("scan expectations need constants_scan = true".into());
        }
        if e.max_leakage.is_some() && self.cutoff_bump == 0 {
            return bad("expect.max_leakage needs cutoff_bump > 0".into());
        }
        Ok(())
    }
}
