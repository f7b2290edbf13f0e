use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dynamics::{Component, ReducedTrajectory};
use crate::error::{Error, Result};

/// One term `weight · coeff(observable, component)` of a linear relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub observable: String,
    pub component: Component,
    pub weight: f64,
}

/// A homogeneous relation `Σ terms = 0`, checked pointwise in `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constraint {
    pub terms: Vec<Term>,
}

/// A named set of linear constraints on coefficient functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTemplate {
    pub name: String,
    pub constraints: Vec<Constraint>,
}

/// Template check attached to a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemplateMatch {
    pub name: String,
    pub max_violation: f64,
    pub holds: bool,
}

fn zero(obs: &str, c: Component) -> Constraint {
    Constraint {
        terms: vec![Term {
            observable: obs.into(),
            component: c,
            weight: 1.0,
        }],
    }
}

/// `coeff(a) − sign · coeff(b) = 0`.
fn pair(a: (&str, Component), b: (&str, Component), sign: f64) -> Constraint {
    Constraint {
        terms: vec![
            Term {
                observable: a.0.into(),
                component: a.1,
                weight: 1.0,
            },
            Term {
                observable: b.0.into(),
                component: b.1,
                weight: -sign,
            },
        ],
    }
}

pub const BUILTIN_TEMPLATES: [&str; 6] = ["FORM_A", "FORM_B", "FORM_C", "FORM_OSC_F", "FORM_OSC_FG", "FORM_OSC_FGB"];

impl FormTemplate {
    /// Look up a built-in template. Qubit templates refer to the images of
    /// `S1`, `S2`, `S3`; oscillator ones to the image of `A`.
    pub fn builtin(name: &str) -> Result<Self> {
        use Component::*;
        let transverse_zeros = || {
            vec![
                zero("S1", S3),
                zero("S1", I),
                zero("S2", S3),
                zero("S2", I),
                zero("S3", S1),
                zero("S3", S2),
            ]
        };
        let constraints = match name {
            // Σ₁ → Σ₁a − Σ₂b, Σ₂ → Σ₂a + Σ₁b, Σ₃ → Σ₃c + d
            "FORM_A" => {
                let mut c = vec![pair(("S1", S1), ("S2", S2), 1.0), pair(("S1", S2), ("S2", S1), -1.0)];
                c.extend(transverse_zeros());
                c
            }
            "FORM_B" => transverse_zeros(),
            // Σ₂'s image mirrors Σ₁'s with Σ₃ flipped; Σ₃ → Σ₁a₃ − Σ₂a₃ + Σ₃c₃
            "FORM_C" => vec![
                pair(("S2", S1), ("S1", S2), 1.0),
                pair(("S2", S2), ("S1", S1), 1.0),
                pair(("S2", S3), ("S1", S3), -1.0),
                pair(("S2", I), ("S1", I), 1.0),
                pair(("S3", S2), ("S3", S1), -1.0),
                zero("S3", I),
            ],
            "FORM_OSC_F" => vec![zero("A", G), zero("A", B), zero("A", Residual)],
            "FORM_OSC_FG" => vec![zero("A", B), zero("A", Residual)],
            "FORM_OSC_FGB" => vec![zero("A", Residual)],
            _ => return Err(Error::InvalidParameter(format!("unknown template '{name}'"))),
        };
        Ok(Self {
            name: name.into(),
            constraints,
        })
    }

    /// Rename observables, e.g. `S1, S2, S3` to `X, Y, G` for a rotated frame.
    pub fn relabel(mut self, from: &[&str], to: &[&str]) -> Self {
        for c in &mut self.constraints {
            for t in &mut c.terms {
                if let Some(k) = from.iter().position(|f| *f == t.observable) {
                    t.observable = to[k].to_string();
                }
            }
        }
        self
    }

    pub fn observables(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self
            .constraints
            .iter()
            .flat_map(|c| c.terms.iter().map(|t| t.observable.as_str()))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Largest constraint magnitude at each time.
pub fn form_violation_series(traj: &ReducedTrajectory, template: &FormTemplate) -> Result<Vec<f64>> {
    let resolved: Vec<Vec<(usize, Component, f64)>> = template
        .constraints
        .iter()
        .map(|c| {
            c.terms
                .iter()
                .map(|t| Ok((traj.observable_index(&t.observable)?, t.component, t.weight)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    traj.coeffs
        .iter()
        .map(|row| {
            let mut worst: f64 = 0.0;
            for terms in &resolved {
                let mut sum = num_complex::Complex64::new(0.0, 0.0);
                for &(o, comp, w) in terms {
                    let v = row[o].get(comp).ok_or_else(|| {
                        Error::InvalidParameter(format!("template {} needs component {comp}", template.name))
                    })?;
                    sum += v * w;
                }
                worst = worst.max(sum.norm());
            }
            Ok(worst)
        })
        .collect()
}

/// Largest constraint magnitude over the whole trajectory.
pub fn form_violation(traj: &ReducedTrajectory, template: &FormTemplate) -> Result<f64> {
    Ok(form_violation_series(traj, template)?.into_iter().fold(0.0, f64::max))
}

/// CSV with columns `template, t, violation`.
pub fn write_violations_csv<W: Write>(
    writer: W,
    traj: &ReducedTrajectory,
    templates: &[FormTemplate],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["template", "t", "violation"])?;
    for tpl in templates {
        for (t, v) in traj.times.iter().zip(form_violation_series(traj, tpl)?) {
            w.write_record([tpl.name.clone(), format!("{t:.17e}"), format!("{v:.17e}")])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{trajectory, uniform_grid, Observable};
    use crate::hamiltonians::{build, HamiltonianSpec};
    use crate::model::{env_state, EnvState};

    fn qubit_traj(gamma: [f64; 3], r: [f64; 3], grid: &[f64]) -> ReducedTrajectory {
        let h = build(&HamiltonianSpec::Xyz { gamma }).unwrap();
        let rho = env_state(&EnvState::Bloch { r }, &h.space).unwrap();
        let obs: Vec<_> = ["S1", "S2", "S3"].iter().map(|l| Observable::named(l, 2).unwrap()).collect();
        trajectory(&h, &rho, &obs, grid).unwrap()
    }

    #[test]
    fn form_a_counts() {
        let t = FormTemplate::builtin("FORM_A").unwrap();
        assert_eq!(t.constraints.len(), 8);
        assert_eq!(FormTemplate::builtin("FORM_C").unwrap().constraints.len(), 6);
        assert!(FormTemplate::builtin("FORM_Z").is_err());
    }

    #[test]
    fn identity_map_has_form_a() {
        let tr = qubit_traj([1.0, 2.0, 3.0], [0.3, 0.1, 0.2], &[0.0]);
        assert!(form_violation(&tr, &FormTemplate::builtin("FORM_A").unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn form_a_for_equal_transverse_couplings() {
        let grid = uniform_grid(6.0, 31).unwrap();
        let tr = qubit_traj([1.1, 1.1, 0.4], [0.0, 0.0, 0.7], &grid);
        assert!(form_violation(&tr, &FormTemplate::builtin("FORM_A").unwrap()).unwrap() < 1e-12);
        let tr = qubit_traj([1.1, 0.5, 0.4], [0.0, 0.0, 0.7], &grid);
        assert!(form_violation(&tr, &FormTemplate::builtin("FORM_A").unwrap()).unwrap() > 1e-3);
    }

    #[test]
    fn form_c_for_diagonal_bath_polarization() {
        let grid = uniform_grid(6.0, 31).unwrap();
        let tr = qubit_traj([0.8, 0.8, -1.3], [0.4, 0.4, 0.0], &grid);
        assert!(form_violation(&tr, &FormTemplate::builtin("FORM_C").unwrap()).unwrap() < 1e-12);
        assert!(form_violation(&tr, &FormTemplate::builtin("FORM_A").unwrap()).unwrap() > 1e-3);
    }

    #[test]
    fn missing_observable_rejected() {
        let tr = qubit_traj([1.0; 3], [0.0; 3], &[0.0]);
        assert!(form_violation(&tr, &FormTemplate::builtin("FORM_OSC_F").unwrap()).is_err());
        let relabeled = FormTemplate::builtin("FORM_A").unwrap().relabel(&["S1", "S2", "S3"], &["X", "Y", "G"]);
        assert_eq!(relabeled.observables(), vec!["G", "X", "Y"]);
        assert!(form_violation(&tr, &relabeled).is_err());
    }
}
