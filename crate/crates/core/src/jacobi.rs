//! Cyclic Jacobi eigenvalue iteration for dense symmetric matrices.

use serde::Serialize;
use thiserror::Error;

use crate::matrix::IntegerSymmetricMatrix;

/// Relative off-diagonal threshold used when none is given.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Sweeps allowed before the iteration is declared stuck.
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JacobiError {
    #[error("Jacobi iteration did not converge in {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("matrix is not square and symmetric")]
    NotSymmetric,
}

/// Eigenvalues sorted nonincreasing, with an absolute error bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    tol: f64,
}

impl Spectrum {
    /// Sorts `values` nonincreasing.
    pub fn new(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values, tol }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Absolute accuracy of every value.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The `k`-th largest value, 1-based.
    pub fn nth(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Values in `[a - eps, b + eps]`.
    pub fn count_in(&self, a: f64, b: f64, eps: f64) -> usize {
        self.values
            .iter()
            .filter(|&&x| x >= a - eps && x <= b + eps)
            .count()
    }
}

pub fn numeric_spectrum(m: &IntegerSymmetricMatrix) -> Result<Spectrum, JacobiError> {
    numeric_spectrum_with(m, DEFAULT_TOL)
}

pub fn numeric_spectrum_with(m: &IntegerSymmetricMatrix, tol: f64) -> Result<Spectrum, JacobiError> {
    symmetric_eigenvalues(m.to_f64_rows(), tol)
}

/// Eigenvalues of a real symmetric matrix given by rows.
///
/// Sweeps run until the off-diagonal Frobenius norm drops to
/// `tol * ||A||_F`. The reported accuracy is that residual plus a rounding
/// allowance, which bounds every eigenvalue error by Weyl's inequality.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>, tol: f64) -> Result<Spectrum, JacobiError> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n)
        || (0..n).any(|i| (0..i).any(|j| a[i][j] != a[j][i]))
    {
        return Err(JacobiError::NotSymmetric);
    }
    let norm = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = tol * norm;
    let off_norm = |a: &[Vec<f64>]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };

    let mut off = off_norm(&a);
    let mut sweeps = 0;
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(JacobiError::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r][p];
                    let h = a[r][q];
                    let new_rp = g - s * (h + g * tau);
                    let new_rq = h + s * (g - h * tau);
                    a[r][p] = new_rp;
                    a[p][r] = new_rp;
                    a[r][q] = new_rq;
                    a[q][r] = new_rq;
                }
            }
        }
        off = off_norm(&a);
    }
    let rounding = 8.0 * (n.max(1) as f64) * f64::EPSILON * norm;
    let values = (0..n).map(|i| a[i][i]).collect();
    Ok(Spectrum::new(values, off + rounding))
}
