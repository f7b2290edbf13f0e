use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Square complex matrix in compressed sparse row form.
///
/// Used for Hamiltonians and full-space ladder combinations whose dense
/// form would be too large to hold (two oscillators at cutoff 60 span a
/// 3721-dimensional space).
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            row_ptr: vec![0; dim + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_triplets(dim, (0..dim).map(|i| (i, i, Complex64::new(1.0, 0.0))))
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, Complex64)>) -> Self {
        let mut rows: Vec<BTreeMap<usize, Complex64>> = vec![BTreeMap::new(); dim];
        for (i, j, v) in triplets {
            assert!(i < dim && j < dim, "triplet ({i}, {j}) outside {dim}x{dim}");
            *rows[i].entry(j).or_insert(ZERO) += v;
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (j, v) in row {
                if v != ZERO {
                    col_idx.push(j);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Self {
            dim,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn from_dense(m: &ComplexMatrix) -> Result<Self> {
        let n = m.dim()?;
        let mut triplets = Vec::new();
        for i in 0..n {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v != ZERO {
                    triplets.push((i, j, v));
                }
            }
        }
        Ok(Self::from_triplets(n, triplets))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim).flat_map(move |i| self.row_entries(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.row_entries(i).find(|&(c, _)| c == j).map_or(ZERO, |(_, v)| v)
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(i, j, v)| (j, i, v.conj())))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(i, j, v)| (i, j, v * s)))
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn kron(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let mut triplets = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, j, a) in self.triplets() {
            for (k, l, b) in other.triplets() {
                triplets.push((i * other.dim + k, j * other.dim + l, a * b));
            }
        }
        Self::from_triplets(dim, triplets)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other, "sparse product")?;
        let mut triplets = Vec::new();
        for i in 0..self.dim {
            for (k, a) in self.row_entries(i) {
                for (j, b) in other.row_entries(k) {
                    triplets.push((i, j, a * b));
                }
            }
        }
        Ok(Self::from_triplets(self.dim, triplets))
    }

    /// `self · v` for a dense block of column vectors (`dim x k`).
    pub fn mul_dense(&self, v: &ComplexMatrix) -> Result<ComplexMatrix> {
        if v.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.rows(),
                context: "sparse times dense",
            });
        }
        let k = v.cols();
        let mut out = ComplexMatrix::zeros(self.dim, k);
        for i in 0..self.dim {
            let dst = out.row_mut(i);
            for (j, a) in self.row_entries(i) {
                for (d, &b) in dst.iter_mut().zip(v.row(j)) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Max column absolute sum, an upper bound on the spectral norm for
    /// Hermitian input.
    pub fn norm_one(&self) -> f64 {
        let mut col_sums = vec![0.0; self.dim];
        for (_, j, v) in self.triplets() {
            col_sums[j] += v.norm();
        }
        col_sums.into_iter().fold(0.0, f64::max)
    }

    pub fn max_hermitian_asymmetry(&self) -> f64 {
        let adj = self.adjoint();
        let diff = self - &adj;
        diff.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn ensure_hermitian(&self, tolerance: f64) -> Result<()> {
        let asymmetry = self.max_hermitian_asymmetry();
        if asymmetry > tolerance {
            return Err(Error::NotHermitian {
                asymmetry,
                tolerance,
            });
        }
        Ok(())
    }

    pub fn hs_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.matmul(other)? - &other.matmul(self)?)
    }

    /// Connected components of the sparsity graph. Each component spans an
    /// invariant subspace, so the matrix is block diagonal over them.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.dim).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, j, _) in self.triplets() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        groups.into_values().collect()
    }

    fn check_dim(&self, other: &Self, context: &'static str) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
                context,
            });
        }
        Ok(())
    }
}

impl Add for &SparseMatrix {
    type Output = SparseMatrix;

    fn add(self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim, "sparse add dimension mismatch");
        SparseMatrix::from_triplets(self.dim, self.triplets().chain(rhs.triplets()))
    }
}

impl Sub for &SparseMatrix {
    type Output = SparseMatrix;

    fn sub(self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim, "sparse sub dimension mismatch");
        SparseMatrix::from_triplets(
            self.dim,
            self.triplets().chain(rhs.triplets().map(|(i, j, v)| (i, j, -v))),
        )
    }
}

impl Mul for &SparseMatrix {
    type Output = SparseMatrix;

    fn mul(self, rhs: &SparseMatrix) -> SparseMatrix {
        self.matmul(rhs).expect("sparse product dimension mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn duplicate_triplets_are_summed_and_zeros_dropped() {
        let m = SparseMatrix::from_triplets(2, [(0, 1, c(1.0)), (0, 1, c(2.0)), (1, 0, c(1.0)), (1, 0, c(-1.0))]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 1), c(3.0));
    }

    #[test]
    fn dense_round_trip_and_products_agree() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| Complex64::new((i + 2 * j) as f64 % 3.0, i as f64 - j as f64));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| Complex64::new(1.0 - (i * j) as f64, 0.5));
        let sa = SparseMatrix::from_dense(&a).unwrap();
        let sb = SparseMatrix::from_dense(&b).unwrap();
        assert_eq!(sa.to_dense(), a);
        let dense = a.matmul(&b).unwrap();
        assert!(crate::linalg::hs_distance(&sa.matmul(&sb).unwrap().to_dense(), &dense).unwrap() < 1e-13);
        assert!(crate::linalg::hs_distance(&sa.mul_dense(&b).unwrap(), &dense).unwrap() < 1e-13);
        assert_eq!(sa.kron(&sb).to_dense(), a.kron(&b));
        assert_eq!(sa.adjoint().to_dense(), a.adjoint());
    }

    #[test]
    fn components_split_block_diagonal_matrix() {
        let m = SparseMatrix::from_triplets(5, [(0, 3, c(1.0)), (3, 0, c(1.0)), (1, 1, c(2.0)), (2, 4, c(1.0))]);
        assert_eq!(m.connected_components(), vec![vec![0, 3], vec![1], vec![2, 4]]);
    }

    #[test]
    fn mul_dense_rejects_wrong_rows() {
        let m = SparseMatrix::identity(3);
        assert!(m.mul_dense(&ComplexMatrix::zeros(2, 1)).is_err());
    }
}
