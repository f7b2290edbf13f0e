use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{ClassKind, ScenarioConfig};
use crate::constants::{check_constant, scan_constants, Classification, ConstantReport, ScanResult};
use crate::dynamics::{
    leakage_check, trajectory_with, uniform_grid, CoefficientBasis, Component, LeakageReport, Observable,
    ReducedDynamics, ReducedTrajectory, TrajectoryRequest,
};
use crate::error::{Error, Result};
use crate::hamiltonians::{build, HamiltonianSpec};
use crate::linalg::ComplexMatrix;
use crate::model::{env_state, pauli};
use crate::symmetry::{
    bloch_operator, check_symmetry_with, default_basis, form_violation, orthonormal_frame, write_violations_csv,
    FormTemplate, SymmetryReport, TemplateMatch, UnitarySpec,
};
use crate::verdict::Verdict;

/// Computed verdict on a published constancy claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub observable: String,
    pub claimed_constant: bool,
    pub source: String,
    pub max_defect: f64,
    pub verdict: Verdict,
    /// `None` when the computed verdict is inconclusive.
    pub agrees: Option<bool>,
    pub statement: String,
    pub defect_by_time: Vec<f64>,
}

/// Numeric Σ₃ coefficients next to the two-level prediction
/// `c = (1 + cos 4ωt)/2`, `d = (cos 4ωt − 1)/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelComparison {
    pub omega: f64,
    pub times: Vec<f64>,
    pub numeric_c: Vec<f64>,
    pub numeric_d: Vec<f64>,
    pub oracle_c: Vec<f64>,
    pub oracle_d: Vec<f64>,
    /// `‖reduce(Σ₃) − Σ₃‖` and its predicted value `1 − cos 4ωt`.
    pub numeric_defect: Vec<f64>,
    pub oracle_defect: Vec<f64>,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentMax {
    pub observable: String,
    pub component: Component,
    pub max_abs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectationOutcome {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub config: ScenarioConfig,
    pub t_max: f64,
    pub points: usize,
    pub symmetries: Vec<SymmetryReport>,
    pub templates: Vec<TemplateMatch>,
    pub zero_components: Vec<ComponentMax>,
    pub constants_scan: Option<ScanSummary>,
    pub constant_checks: Vec<ConstantReport>,
    pub claims: Vec<ClaimOutcome>,
    pub two_level: Option<TwoLevelComparison>,
    pub leakage: Option<LeakageReport>,
    pub expectations: Vec<ExpectationOutcome>,
    pub errors: Vec<String>,
    pub passed: bool,
}

/// Scan result without the per-direction table (that goes to CSV).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub classification: Classification,
    pub min_defect: f64,
    pub max_defect: f64,
    pub directions_scanned: usize,
    pub labelled: Vec<(String, f64, Verdict)>,
}

pub struct RunOutput {
    pub report: ScenarioReport,
    pub trajectory: Option<ReducedTrajectory>,
    pub scan: Option<ScanResult>,
    pub templates: Vec<FormTemplate>,
}

impl RunOutput {
    /// Write `report.json`, `trajectories.csv`, and when present `scan.csv`
    /// and `templates.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        serde_json::to_writer_pretty(BufWriter::new(File::create(dir.join("report.json"))?), &self.report)?;
        if let Some(tr) = &self.trajectory {
            tr.write_csv(BufWriter::new(File::create(dir.join("trajectories.csv"))?))?;
            if !self.templates.is_empty() {
                write_violations_csv(BufWriter::new(File::create(dir.join("templates.csv"))?), tr, &self.templates)?;
            }
        }
        if let Some(scan) = &self.scan {
            scan.write_csv(BufWriter::new(File::create(dir.join("scan.csv"))?))?;
        }
        Ok(())
    }
}

fn resolve_observable(label: &str, s_dim: usize, frame: Option<&[[f64; 3]; 3]>) -> Result<Observable> {
    let slot = ["X", "Y", "G"].iter().position(|l| *l == label);
    match (slot, frame) {
        (Some(k), Some(f)) => Ok(Observable::new(label, bloch_operator(f[k])?)),
        _ => Observable::named(label, s_dim),
    }
}

/// Bloch directions of the generators of the configured unitaries.
fn generator_directions(unitaries: &[UnitarySpec]) -> Vec<(String, [f64; 3])> {
    let mut out = Vec::new();
    for (i, u) in unitaries.iter().enumerate() {
        let dir = match *u {
            UnitarySpec::RotZ { .. } => Some([0.0, 0.0, 1.0]),
            UnitarySpec::RotAxis { axis, .. } => Some(axis),
            UnitarySpec::RotXyPi => Some([1.0, 1.0, 0.0]),
            UnitarySpec::GGroup { alpha, gamma, .. } => Some([alpha, gamma, 0.0]),
            _ => None,
        };
        if let Some(d) = dir {
            if d.iter().any(|x| *x != 0.0) {
                out.push((format!("generator{i}"), d));
            }
        }
    }
    out
}

struct Collector {
    errors: Vec<String>,
}

impl Collector {
    fn take<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.errors.push(format!("{what}: {e}"));
                None
            }
        }
    }
}

/// Run every check in the scenario. Configuration errors are returned;
/// numeric failures are recorded in the report.
pub fn run(cfg: &ScenarioConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let h = build(&cfg.hamiltonian)?;
    let rho = env_state(&cfg.env_state, &h.space)?;
    let s_dim = h.space.s_dim();
    let window = cfg.s_window.unwrap_or(s_dim);
    let dynamics = ReducedDynamics::with_window(&h, &rho, window)?;
    let t_max = cfg.grid_t_max();
    let grid = uniform_grid(t_max, cfg.t_grid.points)?;
    let tol = cfg.tolerances;
    let frame = cfg.frame_axis.map(orthonormal_frame).transpose()?;
    let basis = if cfg.is_qubit() {
        match frame {
            Some(f) => CoefficientBasis::Pauli { frame: f },
            None => CoefficientBasis::STANDARD,
        }
    } else {
        CoefficientBasis::Ladder {
            levels: Some(cfg.coeff_levels.unwrap_or(window.min(s_dim - 2))),
        }
    };
    let labels = cfg.observable_labels();
    let observables = labels
        .iter()
        .map(|l| resolve_observable(l, s_dim, frame.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let templates = cfg.resolved_templates()?;
    let mut c = Collector { errors: Vec::new() };

    let trajectory = c.take("trajectory", trajectory_with(&dynamics, &observables, &grid, &basis));

    let mut template_matches = Vec::new();
    if let Some(tr) = &trajectory {
        for t in &templates {
            if let Some(v) = c.take(&format!("template {}", t.name), form_violation(tr, t)) {
                template_matches.push(TemplateMatch {
                    name: t.name.clone(),
                    max_violation: v,
                    holds: v < tol.accept,
                });
            }
        }
    }

    let mut symmetries = Vec::new();
    let q_basis = default_basis(s_dim)?;
    for u in &cfg.unitaries {
        let r = check_symmetry_with(&dynamics, &rho, u, &q_basis, &grid, tol);
        if let Some(mut rep) = c.take(&format!("symmetry {}", u.name()), r) {
            rep.matched_templates = template_matches.clone();
            symmetries.push(rep);
        }
    }

    let mut zero_components = Vec::new();
    if let Some(tr) = &trajectory {
        for z in &cfg.expect.zero_components {
            if let Some(series) = c.take("zero component", tr.series(&z.observable, z.component)) {
                zero_components.push(ComponentMax {
                    observable: z.observable.clone(),
                    component: z.component,
                    max_abs: series.iter().map(|v| v.norm()).fold(0.0, f64::max),
                });
            }
        }
    }

    let scan = if cfg.constants_scan {
        let mut extra: Vec<(String, [f64; 3])> =
            cfg.scan_extra.iter().map(|d| (d.label.clone(), d.direction)).collect();
        extra.extend(generator_directions(&cfg.unitaries));
        let samples = cfg.scan_directions.unwrap_or(crate::constants::DEFAULT_SCAN_DIRECTIONS);
        c.take("constants scan", scan_constants(&dynamics, &grid, tol, samples, &extra))
    } else {
        None
    };

    let mut constant_checks = Vec::new();
    for label in &cfg.constant_checks {
        let r = resolve_observable(label, s_dim, frame.as_ref())
            .and_then(|o| check_constant(&dynamics, label, &o.matrix, &grid, tol));
        if let Some(rep) = c.take(&format!("constant check {label}"), r) {
            constant_checks.push(rep);
        }
    }

    let mut claims = Vec::new();
    for claim in &cfg.claims {
        let r = resolve_observable(&claim.observable, s_dim, frame.as_ref())
            .and_then(|o| check_constant(&dynamics, &claim.observable, &o.matrix, &grid, tol));
        if let Some(rep) = c.take(&format!("claim {}", claim.observable), r) {
            claims.push(adjudicate(claim.clone(), rep));
        }
    }

    let two_level = match (cfg.two_level_oracle, &cfg.hamiltonian) {
        (true, HamiltonianSpec::JaynesCummings { omega, .. }) => {
            c.take("two-level oracle", two_level_comparison(&dynamics, *omega, &grid))
        }
        _ => None,
    };

    let leakage = if cfg.cutoff_bump > 0 {
        let req = TrajectoryRequest {
            hamiltonian: &cfg.hamiltonian,
            env: &cfg.env_state,
            observables: &labels,
            t_grid: &grid,
            basis: basis.clone(),
            s_window: cfg.s_window,
        };
        c.take("leakage check", leakage_check(&req, cfg.cutoff_bump))
    } else {
        None
    };

    let scan_summary = scan.as_ref().map(|s| ScanSummary {
        classification: s.classification.clone(),
        min_defect: s.min_defect,
        max_defect: s.max_defect,
        directions_scanned: s.directions.len(),
        labelled: s
            .directions
            .iter()
            .filter_map(|d| d.label.clone().map(|l| (l, d.max_defect, d.verdict)))
            .collect(),
    });

    let mut report = ScenarioReport {
        name: cfg.name.clone(),
        config: cfg.clone(),
        t_max,
        points: grid.len(),
        symmetries,
        templates: template_matches,
        zero_components,
        constants_scan: scan_summary,
        constant_checks,
        claims,
        two_level,
        leakage,
        expectations: Vec::new(),
        errors: c.errors,
        passed: false,
    };
    report.expectations = evaluate_expectations(cfg, &report, scan.as_ref());
    report.passed = report.errors.is_empty() && report.expectations.iter().all(|e| e.passed);
    Ok(RunOutput {
        report,
        trajectory,
        scan,
        templates,
    })
}

fn adjudicate(claim: super::config::ConstancyClaim, rep: ConstantReport) -> ClaimOutcome {
    let agrees = match rep.verdict {
        Verdict::Holds => Some(claim.constant),
        Verdict::Broken => Some(!claim.constant),
        Verdict::Inconclusive => None,
    };
    let claimed = if claim.constant { "constant" } else { "not constant" };
    let statement = match agrees {
        Some(true) => format!(
            "agreement: {} is claimed {claimed}; computed max defect {:.3e} ({:?})",
            claim.observable, rep.max_defect, rep.verdict
        ),
        Some(false) => format!(
            "disagreement: {} is claimed {claimed}, but the computed max defect is {:.3e} ({:?})",
            claim.observable, rep.max_defect, rep.verdict
        ),
        None => format!(
            "undecided: {} is claimed {claimed}; computed max defect {:.3e} lies between the tolerances",
            claim.observable, rep.max_defect
        ),
    };
    ClaimOutcome {
        observable: claim.observable,
        claimed_constant: claim.constant,
        source: claim.source,
        max_defect: rep.max_defect,
        verdict: rep.verdict,
        agrees,
        statement,
        defect_by_time: rep.defect_by_time,
    }
}

fn two_level_comparison(dynamics: &ReducedDynamics, omega: f64, grid: &[f64]) -> Result<TwoLevelComparison> {
    let s3 = pauli(3)?;
    let mut out = TwoLevelComparison {
        omega,
        times: grid.to_vec(),
        numeric_c: Vec::new(),
        numeric_d: Vec::new(),
        oracle_c: Vec::new(),
        oracle_d: Vec::new(),
        numeric_defect: Vec::new(),
        oracle_defect: Vec::new(),
        max_deviation: 0.0,
    };
    for map in dynamics.over(grid)? {
        let red = map.apply(&s3)?;
        let c = (red.matmul(&s3)?.trace()? / 2.0).re;
        let d = (red.trace()? / 2.0).re;
        let cos = (4.0 * omega * map.t).cos();
        let (oc, od) = ((1.0 + cos) / 2.0, (cos - 1.0) / 2.0);
        let defect = crate::linalg::hs_distance(&red, &s3)?;
        let odefect = 1.0 - cos;
        let dev = (c - oc).abs().max((d - od).abs()).max((defect - odefect).abs());
        out.max_deviation = out.max_deviation.max(dev);
        out.numeric_c.push(c);
        out.numeric_d.push(d);
        out.oracle_c.push(oc);
        out.oracle_d.push(od);
        out.numeric_defect.push(defect);
        out.oracle_defect.push(odefect);
    }
    Ok(out)
}

fn evaluate_expectations(cfg: &ScenarioConfig, r: &ScenarioReport, scan: Option<&ScanResult>) -> Vec<ExpectationOutcome> {
    let e = &cfg.expect;
    let tol = cfg.tolerances;
    let mut out = Vec::new();
    let mut push = |check: String, passed: bool, detail: String| out.push(ExpectationOutcome { check, passed, detail });

    for (i, want) in e.symmetries.iter().enumerate() {
        let name = cfg.unitaries[i].name();
        match r.symmetries.iter().find(|s| s.unitary == cfg.unitaries[i]) {
            Some(s) => push(
                format!("symmetry {name} is {want:?}"),
                s.verdict == *want,
                format!("max defect {:.3e} ({:?})", s.max_defect, s.verdict),
            ),
            None => push(format!("symmetry {name} is {want:?}"), false, "not computed".into()),
        }
    }
    let find_template = |name: &str| r.templates.iter().find(|t| t.name == name);
    for name in &e.templates_hold {
        let t = find_template(name);
        push(
            format!("template {name} holds"),
            t.is_some_and(|t| t.holds),
            t.map_or("not computed".into(), |t| format!("max violation {:.3e}", t.max_violation)),
        );
    }
    for name in &e.templates_fail {
        let t = find_template(name);
        push(
            format!("template {name} fails"),
            t.is_some_and(|t| t.max_violation > tol.reject),
            t.map_or("not computed".into(), |t| format!("max violation {:.3e}", t.max_violation)),
        );
    }
    for z in &r.zero_components {
        push(
            format!("{} component {} vanishes", z.observable, z.component),
            z.max_abs < tol.accept,
            format!("max |value| {:.3e}", z.max_abs),
        );
    }
    if let Some(want) = e.classification {
        let got = scan.map(|s| match s.classification {
            Classification::NoneConstant => ClassKind::NoneConstant,
            Classification::AllConstant => ClassKind::AllConstant,
            Classification::Directions { .. } => ClassKind::Directions,
        });
        push(format!("scan classification {want:?}"), got == Some(want), format!("got {got:?}"));
    }
    for (labels, want) in [(&e.constant, true), (&e.not_constant, false)] {
        for l in labels {
            let d = scan.and_then(|s| s.find(l));
            let passed = d.is_some_and(|d| match want {
                true => d.verdict == Verdict::Holds,
                false => d.verdict == Verdict::Broken,
            });
            push(
                format!("direction {l} {}", if want { "constant" } else { "not constant" }),
                passed,
                d.map_or("not scanned".into(), |d| format!("max defect {:.3e}", d.max_defect)),
            );
        }
    }
    for (want, rep) in e.constant_checks.iter().zip(&r.constant_checks) {
        push(
            format!("constant check {} is {want:?}", rep.observable),
            rep.verdict == *want,
            format!("max defect {:.3e}", rep.max_defect),
        );
    }
    if let Some(limit) = e.max_leakage {
        push(
            format!("leakage below {limit:e}"),
            r.leakage.is_some_and(|l| l.max_relative_shift < limit),
            r.leakage.map_or("not computed".into(), |l| format!("shift {:.3e}", l.max_relative_shift)),
        );
    }
    out
}

/// Reduced image of `q` on the trajectory grid, for callers that need
/// matrices rather than coefficients.
pub fn reduced_series(output: &RunOutput, label: &str) -> Result<Vec<ComplexMatrix>> {
    let tr = output
        .trajectory
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("run produced no trajectory".into()))?;
    let o = tr.observable_index(label)?;
    Ok(tr.reduced_ops.iter().map(|row| row[o].clone()).collect())
}
