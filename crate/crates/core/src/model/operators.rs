use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::space::SpaceSpec;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, SparseMatrix};

/// Dense operator on a composite space.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    pub matrix: ComplexMatrix,
    pub space: SpaceSpec,
}

impl Operator {
    pub fn new(matrix: ComplexMatrix, space: SpaceSpec) -> Result<Self> {
        let n = matrix.dim()?;
        if n != space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.total_dim(),
                found: n,
                context: "operator vs space dimension",
            });
        }
        Ok(Self { matrix, space })
    }

    pub fn identity(space: &SpaceSpec) -> Self {
        Self {
            matrix: ComplexMatrix::identity(space.total_dim()),
            space: space.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            space: self.space.clone(),
        }
    }

    pub fn matmul(&self, other: &Operator) -> Result<Self> {
        self.require_same_space(other)?;
        Ok(Self {
            matrix: self.matrix.matmul(&other.matrix)?,
            space: self.space.clone(),
        })
    }

    pub fn to_sparse(&self) -> Result<SparseOperator> {
        Ok(SparseOperator {
            matrix: SparseMatrix::from_dense(&self.matrix)?,
            space: self.space.clone(),
        })
    }

    pub fn require_same_space(&self, other: &Operator) -> Result<()> {
        if self.space != other.space {
            return Err(Error::InvalidSpace("operators live on different spaces".into()));
        }
        Ok(())
    }
}

/// Sparse operator on a composite space; Hamiltonians are stored this way.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    pub matrix: SparseMatrix,
    pub space: SpaceSpec,
}

impl SparseOperator {
    pub fn new(matrix: SparseMatrix, space: SpaceSpec) -> Result<Self> {
        if matrix.dim() != space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.total_dim(),
                found: matrix.dim(),
                context: "sparse operator vs space dimension",
            });
        }
        Ok(Self { matrix, space })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn to_dense(&self) -> Operator {
        Operator {
            matrix: self.matrix.to_dense(),
            space: self.space.clone(),
        }
    }
}

/// Sign selector for `Σ±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Pauli matrix for axis `k ∈ {1, 2, 3}` with `σ₁σ₂ = iσ₃`.
pub fn pauli(k: usize) -> Result<ComplexMatrix> {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let entries = match k {
        1 => [z, one, one, z],
        2 => [z, -i, i, z],
        3 => [one, z, z, -one],
        _ => return Err(Error::InvalidParameter(format!("Pauli axis {k} not in 1..=3"))),
    };
    ComplexMatrix::from_vec(2, 2, entries.to_vec())
}

/// `Σ± = Σ₁ ± iΣ₂`, twice the elementary raising/lowering matrix.
pub fn sigma_pm(sign: Sign) -> ComplexMatrix {
    let s1 = pauli(1).expect("axis 1");
    let s2 = pauli(2).expect("axis 2");
    let i = Complex64::new(0.0, 1.0);
    match sign {
        Sign::Plus => &s1 + &s2.scale(i),
        Sign::Minus => &s1 - &s2.scale(i),
    }
}

/// Truncated lowering operator with `⟨n|A|n+1⟩ = √(n+1)`.
///
/// `[A, A†]` is the identity except for the last diagonal entry, which is
/// `-(dim - 1)`.
pub fn ladder(dim: usize) -> Result<ComplexMatrix> {
    Ok(ladder_sparse(dim)?.to_dense())
}

pub fn ladder_sparse(dim: usize) -> Result<SparseMatrix> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("ladder dimension {dim} < 2")));
    }
    Ok(SparseMatrix::from_triplets(
        dim,
        (0..dim - 1).map(|n| (n, n + 1, Complex64::new(((n + 1) as f64).sqrt(), 0.0))),
    ))
}

/// `A†A` on `dim` Fock levels.
pub fn number(dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&(0..dim).map(|n| Complex64::new(n as f64, 0.0)).collect::<Vec<_>>())
}

/// Fock basis vector `|n⟩` as a column.
pub fn fock_vector(dim: usize, n: usize) -> Result<ComplexMatrix> {
    if n >= dim {
        return Err(Error::InvalidParameter(format!("Fock level {n} outside dimension {dim}")));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[n] = Complex64::new(1.0, 0.0);
    Ok(ComplexMatrix::column(&v))
}

/// Embed an operator on one factor into the full space (identity elsewhere).
pub fn lift(local: &ComplexMatrix, factor: usize, space: &SpaceSpec) -> Result<Operator> {
    let sparse = lift_sparse(&SparseMatrix::from_dense(local)?, factor, space)?;
    Ok(sparse.to_dense())
}

pub fn lift_sparse(local: &SparseMatrix, factor: usize, space: &SpaceSpec) -> Result<SparseOperator> {
    let dims = space.dims();
    let fdim = *dims
        .get(factor)
        .ok_or_else(|| Error::InvalidSpace(format!("factor {factor} out of range")))?;
    if local.dim() != fdim {
        return Err(Error::DimensionMismatch {
            expected: fdim,
            found: local.dim(),
            context: "local operator vs factor dimension",
        });
    }
    let left: usize = dims[..factor].iter().product();
    let right: usize = dims[factor + 1..].iter().product();
    let matrix = SparseMatrix::identity(left)
        .kron(local)
        .kron(&SparseMatrix::identity(right));
    SparseOperator::new(matrix, space.clone())
}

/// `q_s ⊗ I_R` for an operator on the whole (S-first) subsystem block.
pub fn extend_subsystem(q_s: &ComplexMatrix, space: &SpaceSpec) -> Result<Operator> {
    space.require_s_first()?;
    let n = q_s.dim()?;
    if n != space.s_dim() {
        return Err(Error::DimensionMismatch {
            expected: space.s_dim(),
            found: n,
            context: "subsystem operator vs S dimension",
        });
    }
    Operator::new(q_s.kron(&ComplexMatrix::identity(space.r_dim())), space.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hs_distance;
    use crate::model::space::Factor;

    fn i() -> Complex64 {
        Complex64::new(0.0, 1.0)
    }

    #[test]
    fn pauli_algebra() {
        let s1 = pauli(1).unwrap();
        let s2 = pauli(2).unwrap();
        let s3 = pauli(3).unwrap();
        assert_eq!(s3, ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]));
        assert!(hs_distance(&(&s1 * &s2), &s3.scale(i())).unwrap() < 1e-15);
        for k in 1..=3 {
            let p = pauli(k).unwrap();
            assert!(hs_distance(&(&p * &p), &ComplexMatrix::identity(2)).unwrap() < 1e-15);
        }
        assert!(pauli(0).is_err());
        assert!(pauli(4).is_err());
    }

    #[test]
    fn sigma_pair_products() {
        let sp = sigma_pm(Sign::Plus);
        let sm = sigma_pm(Sign::Minus);
        let s3 = pauli(3).unwrap();
        let two = ComplexMatrix::identity(2).scale_real(2.0);
        assert!((&sp * &sp).hs_norm() < 1e-15);
        assert!((&sm * &sm).hs_norm() < 1e-15);
        assert!(hs_distance(&(&sp * &sm), &(&two + &s3.scale_real(2.0))).unwrap() < 1e-15);
        assert!(hs_distance(&(&sm * &sp), &(&two - &s3.scale_real(2.0))).unwrap() < 1e-15);
    }

    #[test]
    fn ladder_basic_cases() {
        assert_eq!(ladder(2).unwrap(), ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]));
        assert!(ladder(1).is_err());
        let a = ladder(4).unwrap();
        let lowered = a.matmul(&fock_vector(4, 1).unwrap()).unwrap();
        assert_eq!(lowered, fock_vector(4, 0).unwrap());
    }

    #[test]
    fn lift_places_operator_on_factor() {
        let space = SpaceSpec::s_first(vec![Factor::qubit("s")], vec![Factor::qubit("r")]).unwrap();
        let s3 = pauli(3).unwrap();
        let lifted = lift(&s3, 0, &space).unwrap();
        assert_eq!(lifted.matrix, s3.kron(&ComplexMatrix::identity(2)));
        let xi2 = lift(&pauli(2).unwrap(), 1, &space).unwrap();
        let s2 = lift(&pauli(2).unwrap(), 0, &space).unwrap();
        assert!(hs_distance(&(&xi2.matrix * &s2.matrix), &(&s2.matrix * &xi2.matrix)).unwrap() < 1e-15);
        assert!(lift(&ComplexMatrix::identity(3), 0, &space).is_err());
    }
}
