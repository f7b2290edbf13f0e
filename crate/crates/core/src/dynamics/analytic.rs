use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonians::{build, space_of, HamiltonianSpec};
use crate::linalg::{Propagator, SparseMatrix};
use crate::model::{ladder_sparse, lift_sparse, pauli, SparseOperator};

/// Closed-form Heisenberg image `e^{itH} q e^{-itH}` for the families where
/// one is known.
///
/// * `xyz`: `S1`, `S2`, `S3`
/// * `beamsplitter`, `squeezer`: `A`, `Adag`, `A+B`, `A-B`
/// * `jaynes_cummings`: `S3`, as `Σ₃ e^{-2itH}`
pub fn analytic_evolve(spec: &HamiltonianSpec, observable: &str, t: f64) -> Result<SparseOperator> {
    let space = space_of(spec)?;
    let unsupported = || Error::Unsupported(format!("no closed form for '{observable}' under {}", spec.family()));
    let matrix = match *spec {
        HamiltonianSpec::Xyz { gamma } => {
            let i = match observable {
                "S1" => 0,
                "S2" => 1,
                "S3" => 2,
                _ => return Err(unsupported()),
            };
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let (cj, sj) = ((gamma[j] * t).cos(), (gamma[j] * t).sin());
            let (ck, sk) = ((gamma[k] * t).cos(), (gamma[k] * t).sin());
            let sigma = |a: usize| lift_sparse(&SparseMatrix::from_dense(&pauli(a + 1)?)?, 0, &space).map(|o| o.matrix);
            let xi = |a: usize| lift_sparse(&SparseMatrix::from_dense(&pauli(a + 1)?)?, 1, &space).map(|o| o.matrix);
            let mut m = sigma(i)?.scale_real(cj * ck);
            m = &m + &xi(i)?.scale_real(sj * sk);
            m = &m - &(&sigma(j)? * &xi(k)?).scale_real(cj * sk);
            &m + &(&sigma(k)? * &xi(j)?).scale_real(sj * ck)
        }
        HamiltonianSpec::Beamsplitter { omega, eta, cutoff } => {
            let (a, b) = modes(cutoff, &space)?;
            let (p, q) = (Complex64::new(0.0, -omega * t).exp(), Complex64::new(0.0, -eta * t).exp());
            let sum = &a + &b;
            let diff = &a - &b;
            match observable {
                "A" => &a.scale((p + q) / 2.0) + &b.scale((p - q) / 2.0),
                "Adag" => &a.adjoint().scale((p + q).conj() / 2.0) + &b.adjoint().scale((p - q).conj() / 2.0),
                "A+B" => sum.scale(p),
                "A-B" => diff.scale(q),
                _ => return Err(unsupported()),
            }
        }
        HamiltonianSpec::Squeezer { omega, eta, cutoff } => {
            let (a, b) = modes(cutoff, &space)?;
            let (cw, sw) = ((omega * t).cosh(), (omega * t).sinh());
            let (ce, se) = ((eta * t).cosh(), (eta * t).sinh());
            let (ad, bd) = (a.adjoint(), b.adjoint());
            let combo = |x: &SparseMatrix, xd: &SparseMatrix, y: &SparseMatrix, yd: &SparseMatrix| {
                let m = &x.scale_real((cw + ce) / 2.0) + &xd.scale_real((sw + se) / 2.0);
                let m = &m + &y.scale_real((cw - ce) / 2.0);
                &m + &yd.scale_real((sw - se) / 2.0)
            };
            match observable {
                "A" => combo(&a, &ad, &b, &bd),
                "Adag" => combo(&ad, &a, &bd, &b),
                "A+B" => &(&a + &b).scale_real(cw) + &(&ad + &bd).scale_real(sw),
                "A-B" => &(&a - &b).scale_real(ce) + &(&ad - &bd).scale_real(se),
                _ => return Err(unsupported()),
            }
        }
        HamiltonianSpec::JaynesCummings { .. } if observable == "S3" => {
            let h = build(spec)?;
            let u = Propagator::new(&h.matrix)?.unitary(2.0 * t)?;
            let s3 = lift_sparse(&SparseMatrix::from_dense(&pauli(3)?)?, 0, &space)?.matrix;
            SparseMatrix::from_dense(&s3.mul_dense(&u)?)?
        }
        _ => return Err(unsupported()),
    };
    SparseOperator::new(matrix, space)
}

fn modes(cutoff: usize, space: &crate::model::SpaceSpec) -> Result<(SparseMatrix, SparseMatrix)> {
    let lower = ladder_sparse(cutoff + 1)?;
    Ok((lift_sparse(&lower, 0, space)?.matrix, lift_sparse(&lower, 1, space)?.matrix))
}
