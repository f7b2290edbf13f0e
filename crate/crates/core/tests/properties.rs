use depsym::constants::constant_defect;
use depsym::dynamics::{ladder_coeffs, pauli_coeffs, reduce, reduce_dense, Component, ReducedDynamics};
use depsym::hamiltonians::{build, HamiltonianSpec};
use depsym::linalg::{evolve_unitary, hs_distance, Complex64, ComplexMatrix, Propagator, SparseMatrix};
use depsym::model::{env_state, ladder, pauli, EnvState};
use depsym::symmetry::{symmetry_defect, UnitarySpec};
use proptest::prelude::*;

const TOL: f64 = 1e-11;

fn hermitian(dim: usize, entries: &[f64]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    let mut k = 0;
    for i in 0..dim {
        for j in i..dim {
            let z = if i == j {
                Complex64::new(entries[k], 0.0)
            } else {
                Complex64::new(entries[k], entries[k + 1])
            };
            k += 2;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

fn arb_hermitian(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim).prop_flat_map(|d| {
        prop::collection::vec(-2.0..2.0f64, d * (d + 1)).prop_map(move |v| hermitian(d, &v))
    })
}

fn arb_qubit_observable() -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-3.0..3.0f64, 8).prop_map(|v| hermitian(2, &v))
}

fn arb_bloch() -> impl Strategy<Value = [f64; 3]> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64).prop_map(|(x, y, z)| {
        let n = (x * x + y * y + z * z).sqrt().max(1.0);
        [x / n, y / n, z / n]
    })
}

/// Small qubit-subsystem models with a random environment state.
fn arb_model() -> impl Strategy<Value = (HamiltonianSpec, EnvState)> {
    let g = -3.0..3.0f64;
    prop_oneof![
        ((g.clone(), g.clone(), g.clone()), arb_bloch())
            .prop_map(|((a, b, c), r)| (HamiltonianSpec::Xyz { gamma: [a, b, c] }, EnvState::Bloch { r })),
        (g.clone(), g.clone(), arb_bloch())
            .prop_map(|(alpha, gamma, r)| (HamiltonianSpec::Tilted { alpha, gamma }, EnvState::Bloch { r })),
        (g.clone(), 1..=3usize, arb_bloch())
            .prop_map(|(omega, k, r)| (HamiltonianSpec::SpinStar { omega, k }, EnvState::Bloch { r })),
        (g, 0..=3usize).prop_map(|(omega, n)| {
            (HamiltonianSpec::JaynesCummings { omega, cutoff: 8 }, EnvState::Fock { n })
        }),
    ]
}

fn sigma(k: usize) -> ComplexMatrix {
    pauli(k).unwrap()
}

fn bloch_op(v: [f64; 3]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    for (k, x) in v.iter().enumerate() {
        m.axpy(Complex64::new(*x, 0.0), &sigma(k + 1));
    }
    m
}

fn conj(u: &ComplexMatrix, q: &ComplexMatrix) -> ComplexMatrix {
    u.adjoint().matmul(q).unwrap().matmul(u).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn propagator_is_unitary(h in arb_hermitian(64), t in -5.0..5.0f64) {
        let u = evolve_unitary(&h, t).unwrap();
        prop_assert!(u.unitarity_defect().unwrap() < TOL);
    }

    #[test]
    fn propagator_group_law(h in arb_hermitian(64), t1 in -3.0..3.0f64, t2 in -3.0..3.0f64) {
        let u = evolve_unitary(&h, t1).unwrap().matmul(&evolve_unitary(&h, t2).unwrap()).unwrap();
        prop_assert!(hs_distance(&u, &evolve_unitary(&h, t1 + t2).unwrap()).unwrap() < TOL);
    }

    #[test]
    fn sparse_propagator_matches_dense(h in arb_hermitian(24), t in -3.0..3.0f64) {
        let p = Propagator::new(&SparseMatrix::from_dense(&h).unwrap()).unwrap();
        prop_assert!(hs_distance(&p.unitary(t).unwrap(), &evolve_unitary(&h, t).unwrap()).unwrap() < TOL);
    }

    #[test]
    fn reduced_map_is_unital((spec, env) in arb_model(), t in 0.0..5.0f64) {
        let h = build(&spec).unwrap();
        let rho = env_state(&env, &h.space).unwrap();
        let id = ComplexMatrix::identity(2);
        prop_assert!(hs_distance(&reduce(&h, &rho, &id, t).unwrap(), &id).unwrap() < TOL);
    }

    #[test]
    fn reduced_map_preserves_hermiticity((spec, env) in arb_model(), q in arb_qubit_observable(), t in 0.0..5.0f64) {
        let h = build(&spec).unwrap();
        let rho = env_state(&env, &h.space).unwrap();
        let r = reduce(&h, &rho, &q, t).unwrap();
        prop_assert!(r.max_hermitian_asymmetry().unwrap() < TOL);
    }

    #[test]
    fn reduced_map_is_linear(
        (spec, env) in arb_model(),
        q1 in arb_qubit_observable(),
        q2 in arb_qubit_observable(),
        a in -2.0..2.0f64,
        b in -2.0..2.0f64,
        t in 0.0..5.0f64,
    ) {
        let h = build(&spec).unwrap();
        let rho = env_state(&env, &h.space).unwrap();
        let map = ReducedDynamics::new(&h, &rho).unwrap().at(t).unwrap();
        let mut mix = q1.scale_real(a);
        mix.axpy(Complex64::new(b, 0.0), &q2);
        let mut want = map.apply(&q1).unwrap().scale_real(a);
        want.axpy(Complex64::new(b, 0.0), &map.apply(&q2).unwrap());
        prop_assert!(hs_distance(&map.apply(&mix).unwrap(), &want).unwrap() < 1e-10);
    }

    #[test]
    fn propagation_matches_partial_trace((spec, env) in arb_model(), q in arb_qubit_observable(), t in 0.0..5.0f64) {
        let h = build(&spec).unwrap();
        let rho = env_state(&env, &h.space).unwrap();
        let a = reduce(&h, &rho, &q, t).unwrap();
        let b = reduce_dense(&h, &rho, &q, t).unwrap();
        prop_assert!(hs_distance(&a, &b).unwrap() < 1e-10);
    }

    #[test]
    fn defects_ignore_identity_shift(
        (spec, env) in arb_model(),
        q in arb_qubit_observable(),
        shift in -5.0..5.0f64,
        u in -3.2..3.2f64,
        t in 0.0..5.0f64,
    ) {
        let h = build(&spec).unwrap();
        let rho = env_state(&env, &h.space).unwrap();
        let mut shifted = q.clone();
        shifted.axpy(Complex64::new(shift, 0.0), &ComplexMatrix::identity(2));
        let rot = UnitarySpec::RotZ { u };
        let d0 = symmetry_defect(&h, &rho, &rot, &q, t).unwrap();
        let d1 = symmetry_defect(&h, &rho, &rot, &shifted, t).unwrap();
        prop_assert!((d0 - d1).abs() < 1e-10);
        let c0 = constant_defect(&h, &rho, &q, t).unwrap();
        let c1 = constant_defect(&h, &rho, &shifted, t).unwrap();
        prop_assert!((c0 - c1).abs() < 1e-10);
    }

    #[test]
    fn rot_z_rotates_transverse_paulis(u in -10.0..10.0f64) {
        let rot = UnitarySpec::RotZ { u }.local_matrix(&build(&HamiltonianSpec::Xyz { gamma: [1.0; 3] }).unwrap().space).unwrap();
        let rot = rot.leading_block(2);
        let (s1, s2, s3) = (sigma(1), sigma(2), sigma(3));
        let mut x = s1.scale_real(u.cos());
        x.axpy(Complex64::new(-u.sin(), 0.0), &s2);
        let mut y = s2.scale_real(u.cos());
        y.axpy(Complex64::new(u.sin(), 0.0), &s1);
        prop_assert!(hs_distance(&conj(&rot, &s1), &x).unwrap() < 1e-12);
        prop_assert!(hs_distance(&conj(&rot, &s2), &y).unwrap() < 1e-12);
        prop_assert!(hs_distance(&conj(&rot, &s3), &s3).unwrap() < 1e-12);
    }

    #[test]
    fn rot_axis_rotates_frame(n in arb_bloch(), m in arb_bloch(), u in -6.3..6.3f64) {
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        prop_assume!(len > 0.1);
        let n = [n[0] / len, n[1] / len, n[2] / len];
        // component of m orthogonal to n
        let dot = m[0] * n[0] + m[1] * n[1] + m[2] * n[2];
        let m = [m[0] - dot * n[0], m[1] - dot * n[1], m[2] - dot * n[2]];
        let space = build(&HamiltonianSpec::Xyz { gamma: [1.0; 3] }).unwrap().space;
        let rot = UnitarySpec::RotAxis { u, axis: n }.local_matrix(&space).unwrap();
        let cross = [n[1] * m[2] - n[2] * m[1], n[2] * m[0] - n[0] * m[2], n[0] * m[1] - n[1] * m[0]];
        let want: [f64; 3] = std::array::from_fn(|k| u.cos() * m[k] - u.sin() * cross[k]);
        prop_assert!(hs_distance(&conj(&rot, &bloch_op(n)), &bloch_op(n)).unwrap() < 1e-12);
        prop_assert!(hs_distance(&conj(&rot, &bloch_op(m)), &bloch_op(want)).unwrap() < 1e-12);
    }

    #[test]
    fn pauli_expansion_reconstructs(q in arb_qubit_observable()) {
        let c = pauli_coeffs(&q).unwrap();
        let mut back = ComplexMatrix::identity(2).scale(c.get(Component::I).unwrap());
        for (k, comp) in [Component::S1, Component::S2, Component::S3].into_iter().enumerate() {
            back.axpy(c.get(comp).unwrap(), &sigma(k + 1));
        }
        prop_assert!(hs_distance(&back, &q).unwrap() < 1e-12);
    }

    #[test]
    fn ladder_expansion_is_exact(
        f in (-2.0..2.0f64, -2.0..2.0f64),
        g in (-2.0..2.0f64, -2.0..2.0f64),
        b in (-2.0..2.0f64, -2.0..2.0f64),
        dim in 5..30usize,
    ) {
        let (f, g, b) = (Complex64::new(f.0, f.1), Complex64::new(g.0, g.1), Complex64::new(b.0, b.1));
        let a = ladder(dim).unwrap();
        let mut q = a.scale(f);
        q.axpy(g, &a.adjoint());
        q.axpy(b, &ComplexMatrix::identity(dim));
        let lc = ladder_coeffs(&q, None).unwrap();
        prop_assert!((lc.f - f).norm() < 1e-12 && (lc.g - g).norm() < 1e-12 && (lc.b - b).norm() < 1e-12);
        prop_assert!(lc.residual < 1e-12);
    }
}

#[test]
fn pauli_pair_products() {
    let i = Complex64::new(0.0, 1.0);
    let id = ComplexMatrix::identity(2);
    let eps = |j: usize, k: usize, l: usize| -> f64 {
        match (j, k, l) {
            (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
            (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
            _ => 0.0,
        }
    };
    for j in 1..=3 {
        for k in 1..=3 {
            let mut want = if j == k { id.clone() } else { ComplexMatrix::zeros(2, 2) };
            for l in 1..=3 {
                want.axpy(i * eps(j, k, l), &sigma(l));
            }
            let got = sigma(j).matmul(&sigma(k)).unwrap();
            assert!(hs_distance(&got, &want).unwrap() < 1e-15, "Σ{j}Σ{k}");
        }
    }
}
