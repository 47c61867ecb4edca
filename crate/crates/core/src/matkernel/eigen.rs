//! Cyclic Jacobi eigensolver for real symmetric matrices.

use crate::error::{Error, Result};
use crate::matkernel::real::RealMatrix;

/// Relative symmetry tolerance accepted on input.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Sweeps stop once the off-diagonal Frobenius norm falls below this fraction of ‖S‖.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: RealMatrix,
}

fn check_symmetric(s: &RealMatrix) -> Result<()> {
    let n = s.rows();
    if s.cols() != n {
        return Err(Error::NonSymmetricInput { asymmetry: f64::INFINITY, tolerance: SYMMETRY_TOL });
    }
    let scale = s.frobenius();
    let mut asym: f64 = 0.0;
    for i in 0..n {
        for j in 0..i {
            asym = asym.max((s.get(i, j) - s.get(j, i)).abs());
        }
    }
    if asym > SYMMETRY_TOL * scale.max(f64::MIN_POSITIVE) && asym > 0.0 {
        return Err(Error::NonSymmetricInput { asymmetry: asym, tolerance: SYMMETRY_TOL * scale });
    }
    Ok(())
}

/// Full eigendecomposition `S = V·diag(λ)·Vᵀ`.
pub fn sym_eigen(s: &RealMatrix) -> Result<SymEigen> {
    check_symmetric(s)?;
    let n = s.rows();
    let mut a = s.data().to_vec();
    let mut v = RealMatrix::identity(n).data().to_vec();
    jacobi(&mut a, Some(&mut v), n);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| a[q * n + q].total_cmp(&a[p * n + p]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = RealMatrix::zeros(n, n);
    for (c, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, c, v[r * n + src]);
        }
    }
    Ok(SymEigen { values, vectors })
}

/// Eigenvalues only, descending. Skips accumulating the rotations.
pub fn sym_eigenvalues(s: &RealMatrix) -> Result<Vec<f64>> {
    check_symmetric(s)?;
    let n = s.rows();
    let mut a = s.data().to_vec();
    jacobi(&mut a, None, n);
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|p, q| q.total_cmp(p));
    Ok(values)
}

/// Largest eigenvalue of a symmetric matrix known to be symmetric by construction.
pub(crate) fn lambda_max_unchecked(s: &RealMatrix) -> f64 {
    let n = s.rows();
    let mut a = s.data().to_vec();
    jacobi(&mut a, None, n);
    (0..n).map(|i| a[i * n + i]).fold(f64::NEG_INFINITY, f64::max)
}

fn off_diagonal_sq(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s
}

fn jacobi(a: &mut [f64], mut v: Option<&mut Vec<f64>>, n: usize) {
    let total: f64 = a.iter().map(|x| x * x).sum();
    if total == 0.0 || n < 2 {
        return;
    }
    let threshold = (OFF_DIAGONAL_TOL * OFF_DIAGONAL_TOL) * total;
    let mut polish = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_sq(a, n) < threshold {
            if polish {
                break;
            }
            polish = true;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
}
