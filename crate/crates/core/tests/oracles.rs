//! Frozen reference values from `tests/data/oracles.py` (dense numpy/scipy,
//! literal partial trace), compared against the sparse propagation path.

use depsym::constants::scan_constants;
use depsym::dynamics::{ladder_coeffs, reduce, uniform_grid, Observable, ReducedDynamics};
use depsym::hamiltonians::{build, HamiltonianSpec};
use depsym::linalg::{hs_distance, Complex64, ComplexMatrix};
use depsym::model::{env_state, pauli, DensityMatrix, EnvState};
use depsym::symmetry::{
    check_symmetry, default_basis, env_invariance_defect, symmetry_defect_full, UnitarySpec,
};
use depsym::verdict::Tolerances;
use std::f64::consts::PI;

const BROKEN_ROTZ_MAX_DEFECT: f64 = 1.999999999999999;
const ENV_ROTATION_MAX_DEFECT: f64 = 0.7537778095909111;
const PARTIAL_S1_FULL_DEFECT: f64 = 0.03485559872519817;
const PARTIAL_S2_FULL_DEFECT: f64 = 0.4391549177341346;
const TILTED_S3_MAX_DEFECT: f64 = 2.822845869908223;
const ISOTROPIC_SCAN_MIN_DEFECT: f64 = 1.4142991259351956;
const COHERENT_B_MAX_ABS: f64 = 0.9999987662997031;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn matrix2(v: [Complex64; 4]) -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, v.to_vec()).unwrap()
}

#[test]
fn xyz_spot_value() {
    let h = build(&HamiltonianSpec::Xyz { gamma: [0.3, -1.7, 2.2] }).unwrap();
    let rho = env_state(&EnvState::Bloch { r: [0.2, -0.5, 0.4] }, &h.space).unwrap();
    let got = reduce(&h, &rho, &pauli(1).unwrap(), 0.7).unwrap();
    let want = matrix2([
        c(-0.17129283508537274, 0.0),
        c(0.011443949749304683, 0.14859345700957416),
        c(0.011443949749304683, -0.1485934570095741),
        c(-0.19987867015385674, 0.0),
    ]);
    assert!(hs_distance(&got, &want).unwrap() < 1e-12);
}

#[test]
fn spin_star_spot_value() {
    let h = build(&HamiltonianSpec::SpinStar { omega: 0.9, k: 2 }).unwrap();
    let rho = env_state(&EnvState::MaximallyMixed, &h.space).unwrap();
    let got = reduce(&h, &rho, &pauli(3).unwrap(), 1.1).unwrap();
    let want = matrix2([c(0.6017821732521446, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.6017821732521446, 0.0)]);
    assert!(hs_distance(&got, &want).unwrap() < 1e-12);
}

#[test]
fn jaynes_cummings_fock1_spot_value() {
    let h = build(&HamiltonianSpec::JaynesCummings { omega: 1.0, cutoff: 10 }).unwrap();
    let rho = env_state(&EnvState::Fock { n: 1 }, &h.space).unwrap();
    let got = reduce(&h, &rho, &pauli(3).unwrap(), 0.9).unwrap();
    let want = matrix2([c(0.36978707800470034, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.8967584163341465, 0.0)]);
    assert!(hs_distance(&got, &want).unwrap() < 1e-12);
}

#[test]
fn broken_rot_z_defect_matches() {
    let h = build(&HamiltonianSpec::Xyz { gamma: [1.0, 2.0, 3.0] }).unwrap();
    let rho = env_state(&EnvState::PauliEigenstate { axis: 1, sign: 1 }, &h.space).unwrap();
    let grid = uniform_grid(2.0 * PI / 3.0, 101).unwrap();
    let r = check_symmetry(
        &h,
        &rho,
        &UnitarySpec::RotZ { u: PI / 2.0 },
        &default_basis(2).unwrap(),
        &grid,
        Tolerances::default(),
    )
    .unwrap();
    assert!((r.max_defect - BROKEN_ROTZ_MAX_DEFECT).abs() < 1e-10, "{}", r.max_defect);
}

#[test]
fn env_rotation_defect_matches() {
    let h = build(&HamiltonianSpec::Xyz { gamma: [0.8, 0.8, 1.3] }).unwrap();
    let rho = env_state(&EnvState::Bloch { r: [0.0, 0.0, 0.6] }, &h.space).unwrap();
    let u_r = UnitarySpec::EnvRotation { axis: 1, angle: 1.2 }.local_matrix(&h.space).unwrap();
    let grid = uniform_grid(2.0 * PI / 1.3, 101).unwrap();
    let d = env_invariance_defect(&h, &rho, &u_r, &default_basis(2).unwrap(), &grid).unwrap();
    assert!((d - ENV_ROTATION_MAX_DEFECT).abs() < 1e-10, "{d}");
}

#[test]
fn correlated_state_defects_match() {
    let h = build(&HamiltonianSpec::Xyz { gamma: [1.0; 3] }).unwrap();
    let spec = UnitarySpec::RotZ { u: 0.7 };
    let state = |v: [f64; 4]| {
        let psi: Vec<_> = v.iter().map(|x| c(*x, 0.0)).collect();
        DensityMatrix::pure(&psi, h.space.clone()).unwrap()
    };
    let (s1, s2) = (pauli(1).unwrap(), pauli(2).unwrap());
    for bell in [[1.0, 0.0, 0.0, 1.0], [0.0, 1.0, 1.0, 0.0]] {
        let w = state(bell);
        assert!(symmetry_defect_full(&w, &h, &spec, &s1, 1.3).unwrap() < 1e-12);
        assert!(symmetry_defect_full(&w, &h, &spec, &s2, 1.3).unwrap() < 1e-12);
    }
    let w = state([1.0, 1.0, 0.0, 1.0]);
    let d1 = symmetry_defect_full(&w, &h, &spec, &s1, 1.3).unwrap();
    let d2 = symmetry_defect_full(&w, &h, &spec, &s2, 1.3).unwrap();
    assert!((d1 - PARTIAL_S1_FULL_DEFECT).abs() < 1e-12, "{d1}");
    assert!((d2 - PARTIAL_S2_FULL_DEFECT).abs() < 1e-12, "{d2}");
}

#[test]
fn tilted_sigma3_defect_matches() {
    let (alpha, gamma) = (0.6, 1.1);
    let h = build(&HamiltonianSpec::Tilted { alpha, gamma }).unwrap();
    let rho = env_state(&EnvState::PauliEigenstate { axis: 2, sign: 1 }, &h.space).unwrap();
    let dynamics = ReducedDynamics::new(&h, &rho).unwrap();
    let s3 = pauli(3).unwrap();
    let grid = uniform_grid(4.0 * PI / f64::hypot(alpha, gamma), 101).unwrap();
    let worst = dynamics
        .over(&grid)
        .unwrap()
        .iter()
        .map(|m| hs_distance(&m.apply(&s3).unwrap(), &s3).unwrap())
        .fold(0.0, f64::max);
    assert!((worst - TILTED_S3_MAX_DEFECT).abs() < 1e-10, "{worst}");
}

#[test]
fn isotropic_scan_floor_matches() {
    let h = build(&HamiltonianSpec::Xyz { gamma: [1.0; 3] }).unwrap();
    let rho = env_state(&EnvState::Bloch { r: [0.3, -0.2, 0.5] }, &h.space).unwrap();
    let dynamics = ReducedDynamics::new(&h, &rho).unwrap();
    let grid = uniform_grid(2.0 * PI, 101).unwrap();
    let scan = scan_constants(&dynamics, &grid, Tolerances::default(), 200, &[]).unwrap();
    assert!((scan.min_defect - ISOTROPIC_SCAN_MIN_DEFECT).abs() < 1e-10, "{}", scan.min_defect);
}

#[test]
fn coherent_mixing_term_matches() {
    let h = build(&HamiltonianSpec::Beamsplitter { omega: 1.0, eta: 0.45, cutoff: 40 }).unwrap();
    let rho = env_state(&EnvState::CoherentTruncated { alpha: [1.0, 0.0] }, &h.space).unwrap();
    let dynamics = ReducedDynamics::with_window(&h, &rho, 20).unwrap();
    let a = Observable::named("A", 41).unwrap().matrix;
    let grid = uniform_grid(2.0 * PI, 101).unwrap();
    let maps = dynamics.over(&grid).unwrap();
    let mut worst = 0.0f64;
    for (t, m) in grid.iter().zip(&maps) {
        let lc = ladder_coeffs(&m.apply(&a).unwrap(), Some(20)).unwrap();
        let want = (c(0.0, -t).exp() - c(0.0, -0.45 * t).exp()) * 0.5;
        assert!((lc.b - want).norm() < 1e-8, "t = {t}");
        worst = worst.max(lc.b.norm());
    }
    assert!((worst - COHERENT_B_MAX_ABS).abs() < 1e-8, "{worst}");
}

const ENV_X_ROTATION_MAX_DEFECT: f64 = 1.4142135623730947;
const BROKEN_ROTZ_S1_T1: f64 = 1.7927717238706573;

#[test]
fn env_x_rotation_of_polarized_bath() {
    let h = build(&HamiltonianSpec::Xyz { gamma: [1.0; 3] }).unwrap();
    let rho = env_state(&EnvState::PauliEigenstate { axis: 3, sign: 1 }, &h.space).unwrap();
    let u_r = UnitarySpec::EnvRotation { axis: 1, angle: PI / 2.0 }.local_matrix(&h.space).unwrap();
    let grid = uniform_grid(2.0 * PI, 101).unwrap();
    let d = env_invariance_defect(&h, &rho, &u_r, &default_basis(2).unwrap(), &grid).unwrap();
    assert!((d - ENV_X_ROTATION_MAX_DEFECT).abs() < 1e-10, "{d}");
}

#[test]
fn broken_rot_z_single_point() {
    let h = build(&HamiltonianSpec::Xyz { gamma: [1.0, 2.0, 3.0] }).unwrap();
    let rho = env_state(&EnvState::PauliEigenstate { axis: 1, sign: 1 }, &h.space).unwrap();
    let d = depsym::symmetry::symmetry_defect(&h, &rho, &UnitarySpec::RotZ { u: PI / 2.0 }, &pauli(1).unwrap(), 1.0)
        .unwrap();
    assert!((d - BROKEN_ROTZ_S1_T1).abs() < 1e-12, "{d}");
}

#[test]
fn jaynes_cummings_projector_defects_follow_two_level_restriction() {
    let omega = 0.8;
    let h = build(&HamiltonianSpec::JaynesCummings { omega, cutoff: 40 }).unwrap();
    let rho = env_state(&EnvState::Fock { n: 0 }, &h.space).unwrap();
    let s3 = pauli(3).unwrap();
    for t in [0.0, 0.3, 1.1, 2.5] {
        let want = 0.5 * (1.0 - (4.0 * omega * t).cos());
        let defects = depsym::constants::constant_defect_spectral(&h, &rho, &s3, t).unwrap();
        assert_eq!(defects.len(), 2);
        for p in defects {
            assert!((p.max_defect - want).abs() < 1e-12, "t={t} λ={}", p.eigenvalue);
        }
        let full = depsym::constants::constant_defect(&h, &rho, &s3, t).unwrap();
        assert!((full - 2.0 * want).abs() < 1e-12);
    }
}

#[test]
fn constant_defect_scales_linearly() {
    let h = build(&HamiltonianSpec::Xyz { gamma: [0.4, 1.3, -0.8] }).unwrap();
    let rho = env_state(&EnvState::Bloch { r: [0.1, 0.5, -0.3] }, &h.space).unwrap();
    let q = pauli(1).unwrap().scale_real(0.7);
    let base = depsym::constants::constant_defect(&h, &rho, &q, 1.9).unwrap();
    for lambda in [-2.5, 0.3, 4.0] {
        let d = depsym::constants::constant_defect(&h, &rho, &q.scale_real(lambda), 1.9).unwrap();
        assert!((d - lambda.abs() * base).abs() < 1e-12);
    }
}
