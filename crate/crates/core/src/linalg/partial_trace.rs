use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Trace out every factor not listed in `keep`.
///
/// `dims` is the ordered list of factor dimensions; `keep` lists the factors
/// that survive, and the result orders them as they appear in `dims`.
pub fn partial_trace(q: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    let n = q.dim()?;
    if n != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: n,
            context: "partial trace operand vs factor dimensions",
        });
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::InvalidSpace(format!("kept factor {bad} out of range")));
    }
    let kept: Vec<bool> = (0..dims.len()).map(|f| keep.contains(&f)).collect();
    let kept_dim: usize = dims.iter().zip(&kept).filter(|(_, &k)| k).map(|(d, _)| d).product();
    let traced_dim = total / kept_dim;

    // Split every full index into (kept index, traced index) in mixed radix.
    let mut split = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rem = idx;
        let (mut k_idx, mut k_stride, mut t_idx, mut t_stride) = (0, 1, 0, 1);
        for f in (0..dims.len()).rev() {
            let digit = rem % dims[f];
            rem /= dims[f];
            if kept[f] {
                k_idx += digit * k_stride;
                k_stride *= dims[f];
            } else {
                t_idx += digit * t_stride;
                t_stride *= dims[f];
            }
        }
        split.push((k_idx, t_idx));
    }

    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(kept_dim); traced_dim];
    for (idx, &(k, t)) in split.iter().enumerate() {
        groups[t].push((idx, k));
    }

    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for group in &groups {
        for &(i, ki) in group {
            for &(j, kj) in group {
                out[(ki, kj)] += q[(i, j)];
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hs_distance;
    use num_complex::Complex64;

    #[test]
    fn identity_on_two_qubits_traces_to_twice_identity() {
        let q = ComplexMatrix::identity(4);
        let r = partial_trace(&q, &[2, 2], &[0]).unwrap();
        assert!(hs_distance(&r, &ComplexMatrix::identity(2).scale_real(2.0)).unwrap() < 1e-15);
    }

    #[test]
    fn product_state_keeps_either_factor() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| Complex64::new(0.5, if i < j { 0.2 } else if i > j { -0.2 } else { 0.0 }));
        let b = ComplexMatrix::from_diagonal(&[Complex64::new(0.2, 0.0), Complex64::new(0.3, 0.0), Complex64::new(0.5, 0.0)]);
        let ab = a.kron(&b);
        assert!(hs_distance(&partial_trace(&ab, &[2, 3], &[0]).unwrap(), &a).unwrap() < 1e-15);
        assert!(hs_distance(&partial_trace(&ab, &[2, 3], &[1]).unwrap(), &b.scale(a.trace().unwrap())).unwrap() < 1e-15);
    }

    #[test]
    fn middle_factor_of_three() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::from_real_rows(&[&[1.0, 2.0, 0.0], &[2.0, 0.0, 1.0], &[0.0, 1.0, 3.0]]);
        let c = ComplexMatrix::from_real_rows(&[&[0.25, 0.0], &[0.0, 0.75]]);
        let full = a.kron(&b).kron(&c);
        let r = partial_trace(&full, &[2, 3, 2], &[1]).unwrap();
        assert!(hs_distance(&r, &b.scale_real(2.0)).unwrap() < 1e-14);
        let r02 = partial_trace(&full, &[2, 3, 2], &[0, 2]).unwrap();
        assert!(hs_distance(&r02, &a.kron(&c).scale(b.trace().unwrap())).unwrap() < 1e-14);
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let q = ComplexMatrix::identity(5);
        assert!(partial_trace(&q, &[2, 2], &[0]).is_err());
        assert!(partial_trace(&ComplexMatrix::identity(4), &[2, 2], &[3]).is_err());
    }
}
