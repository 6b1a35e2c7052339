//! Cyclic Jacobi eigendecomposition for dense real symmetric matrices.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

use super::SpectralResult;

/// Iteration stops once the off-diagonal Frobenius norm drops below this
/// fraction of the input's Frobenius norm.
pub const OFF_DIAGONAL_RTOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
/// Allowed `|S[i][j] - S[j][i]|`, relative to `max(1, max |S|)`.
pub const SYMMETRY_TOL: f64 = 1e-12;

fn off_diagonal_norm(a: &DenseMatrix<f64>) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues (ascending), orthonormal eigenvectors and tolerance clusters of `s`.
///
/// Each eigenvector has its largest-magnitude entry made positive. The result
/// is a deterministic function of the input.
pub fn eigen_symmetric(s: &DenseMatrix<f64>, cluster_tol: f64) -> Result<SpectralResult> {
    let (values, vectors) = jacobi(s)?;
    Ok(SpectralResult::from_pairs(values, vectors, cluster_tol))
}

/// Raw Jacobi output: unsorted eigenvalues and eigenvectors.
pub(crate) fn jacobi(s: &DenseMatrix<f64>) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch { expected: s.rows(), actual: s.cols() });
    }
    let n = s.rows();
    let scale = (0..n).flat_map(|i| s.row(i).iter().map(|x| x.abs())).fold(1.0, f64::max);
    for i in 0..n {
        for j in 0..i {
            let deviation = (s[(i, j)] - s[(j, i)]).abs();
            if deviation > SYMMETRY_TOL * scale {
                return Err(Error::NotSymmetric { row: i, col: j, deviation });
            }
        }
    }

    let mut a = DenseMatrix::from_fn(n, n, |i, j| 0.5 * (s[(i, j)] + s[(j, i)]));
    let mut v = DenseMatrix::identity(n);
    let target = OFF_DIAGONAL_RTOL * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off_norm = off_diagonal_norm(&a);
        if off_norm > target {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, off_norm });
        }
    }

    let values = (0..n).map(|i| a[(i, i)]).collect();
    let vectors = (0..n).map(|k| (0..n).map(|i| v[(i, k)]).collect()).collect();
    Ok((values, vectors))
}

/// Annihilates `a[p][q]` with a plane rotation, accumulating it into `v`.
fn rotate(a: &mut DenseMatrix<f64>, v: &mut DenseMatrix<f64>, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let tau = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.rows();

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reconstruction_error(s: &DenseMatrix<f64>, r: &SpectralResult) -> f64 {
        let n = s.rows();
        let rebuilt = DenseMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| r.eigenvalues[k] * r.eigenvectors[k][i] * r.eigenvectors[k][j]).sum()
        });
        let mut diff = rebuilt.clone();
        for i in 0..n {
            for j in 0..n {
                diff[(i, j)] = rebuilt[(i, j)] - s[(i, j)];
            }
        }
        diff.frobenius_norm()
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let r = eigen_symmetric(&DenseMatrix::identity(4), 1e-7).unwrap();
        assert_eq!(r.eigenvalues, vec![1.0; 4]);
        assert_eq!(r.clusters.len(), 1);
        assert_eq!(r.clusters[0].multiplicity, 4);
    }

    #[test]
    fn graph_edge_laplacian() {
        let s = DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let r = eigen_symmetric(&s, 1e-7).unwrap();
        assert!(r.eigenvalues[0].abs() < 1e-14);
        assert!((r.eigenvalues[1] - 2.0).abs() < 1e-14);
        // tied magnitudes: the first one is made positive
        let top = &r.eigenvectors[1];
        assert!(top[0] > 0.0 && top[1] < 0.0);
    }

    #[test]
    fn random_symmetric_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let n = 8;
        let mut s = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let x: f64 = rng.random_range(-1.0..1.0);
                s[(i, j)] = x;
                s[(j, i)] = x;
            }
        }
        let r = eigen_symmetric(&s, 1e-7).unwrap();
        assert!(reconstruction_error(&s, &r) <= 1e-9);
        assert!(r.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = r.eigenvectors[a].iter().zip(&r.eigenvectors[b]).map(|(x, y)| x * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
        assert_eq!(eigen_symmetric(&s, 1e-7).unwrap(), r);
    }

    #[test]
    fn rejects_non_symmetric() {
        let s = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(eigen_symmetric(&s, 1e-7), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert!(eigen_symmetric(&DenseMatrix::zeros(0, 0), 1e-7).unwrap().eigenvalues.is_empty());
        let r = eigen_symmetric(&DenseMatrix::zeros(3, 3), 1e-7).unwrap();
        assert_eq!(r.eigenvalues, vec![0.0; 3]);
    }
}
