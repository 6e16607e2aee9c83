//! Cyclic Jacobi eigensolver for dense real symmetric matrices.

use crate::matrix::Matrix;

use super::SpectralError;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-12;

/// Eigenvalues in descending order, with unit eigenvectors as the matching
/// columns of `vectors`.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix<f64>,
}

impl SymmetricEigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.vectors.rows()).map(|i| self.vectors[(i, k)]).collect()
    }
}

fn off_norm(a: &Matrix<f64>) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes `s` by cyclic Jacobi rotations until the off-diagonal
/// Frobenius norm drops below `tol · max(1, ‖s‖_F)`.
pub fn symmetric_eigen(s: &Matrix<f64>, tol: f64) -> Result<SymmetricEigen, SpectralError> {
    if !s.is_square() {
        return Err(SpectralError::NotSymmetric { asymmetry: f64::INFINITY });
    }
    let n = s.rows();
    let scale = s.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let asym = s.asymmetry();
    if asym > SYMMETRY_TOL * scale || s.iter().any(|x| !x.is_finite()) {
        return Err(SpectralError::NotSymmetric { asymmetry: asym });
    }

    let mut a = s.clone();
    let mut v = Matrix::identity(n);
    let frob = s.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = tol * frob.max(1.0);

    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        if off_norm(&a) < threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    let new_kp = c * akp - sn * akq;
                    let new_kq = sn * akp + c * akq;
                    a[(k, p)] = new_kp;
                    a[(p, k)] = new_kp;
                    a[(k, q)] = new_kq;
                    a[(q, k)] = new_kq;
                }
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        let off = off_norm(&a);
        if off >= threshold {
            return Err(SpectralError::NoConvergence { sweeps: MAX_SWEEPS, off_diagonal: off });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |r, k| v[(r, order[k])]);
    Ok(SymmetricEigen { values, vectors })
}

/// Eigenvalues of a symmetric matrix, descending.
pub fn eigenvalues_symmetric(s: &Matrix<f64>, tol: f64) -> Result<Vec<f64>, SpectralError> {
    symmetric_eigen(s, tol).map(|e| e.values)
}
