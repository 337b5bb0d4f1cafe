//! Laplacian spectra: floating-point full spectra for reporting and exact
//! interval counts for every decision.
//!
//! Counts near the boundaries of interest (`n - d + 2` is attained exactly by
//! the extremal graphs) cannot be trusted to floating point, so
//! [`m_interval`] in exact mode works from the integer characteristic
//! polynomial and [`IntegerPolynomial::count_roots_geq`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::jacobi::{self, JacobiError, Spectrum};
use crate::matrix::IntegerSymmetricMatrix;
use crate::poly::{integer, IntegerPolynomial, PolyError, Rational};

/// Half-width of the window used by numeric interval counts.
pub const NUMERIC_EPS: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("interval endpoints out of order: {a} > {b}")]
    BadInterval { a: Rational, b: Rational },
    #[error("eigenvalue index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error(transparent)]
    Jacobi(#[from] JacobiError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    Exact,
    Numeric,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::Exact => "exact",
            CountMode::Numeric => "numeric",
        })
    }
}

/// Eigenvalues in the closed interval `[a, b]`, with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalCount {
    pub a: Rational,
    pub b: Rational,
    pub count: usize,
    pub mode: CountMode,
}

pub fn laplacian(g: &Graph) -> IntegerSymmetricMatrix {
    IntegerSymmetricMatrix::laplacian(g)
}

/// `det(xI - M)` by the Faddeev–LeVerrier recurrence over big integers.
///
/// With `N_1 = I`, each step forms `M N_k`, reads off
/// `c_{n-k} = -tr(M N_k) / k` and sets `N_{k+1} = M N_k + c_{n-k} I`.
/// The divisions are exact for integer matrices; a nonzero remainder is
/// reported as an error since it can only come from a bug.
pub fn char_poly(m: &IntegerSymmetricMatrix) -> Result<IntegerPolynomial, PolyError> {
    let n = m.order();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    if n == 0 {
        return Ok(IntegerPolynomial::new(coeffs));
    }
    let sparse: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| (j, x))
                .collect()
        })
        .collect();

    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n * n];
    for i in 0..n {
        acc[i * n + i] = BigInt::from(1);
    }
    let mut product = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        for (i, row) in sparse.iter().enumerate() {
            for j in 0..n {
                let mut s = BigInt::zero();
                for &(l, x) in row {
                    let entry = &acc[l * n + j];
                    if !entry.is_zero() {
                        s += entry * x;
                    }
                }
                product[i * n + j] = s;
            }
        }
        let trace: BigInt = (0..n).map(|i| &product[i * n + i]).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(PolyError::Inexact("Faddeev-LeVerrier trace not divisible"));
        }
        let c = -q;
        if k < n {
            std::mem::swap(&mut acc, &mut product);
            for i in 0..n {
                acc[i * n + i] += &c;
            }
        }
        coeffs[n - k] = c;
    }
    Ok(IntegerPolynomial::new(coeffs))
}

/// Laplacian characteristic polynomial of `g`.
pub fn laplacian_char_poly(g: &Graph) -> IntegerPolynomial {
    char_poly(&laplacian(g)).expect("integer matrices have exact Faddeev-LeVerrier steps")
}

pub fn numeric_spectrum(m: &IntegerSymmetricMatrix) -> Result<Spectrum, JacobiError> {
    jacobi::numeric_spectrum(m)
}

pub fn laplacian_spectrum(g: &Graph) -> Spectrum {
    jacobi::numeric_spectrum(&laplacian(g)).expect("Jacobi converges on graph Laplacians")
}

/// `mu_j(P_n) = 4 sin^2((n - j) pi / 2n)` for `j = 1..n`.
pub fn path_spectrum_closed_form(n: usize) -> Spectrum {
    let values = (1..=n)
        .map(|j| {
            let s = ((n - j) as f64 * std::f64::consts::PI / (2.0 * n as f64)).sin();
            4.0 * s * s
        })
        .collect();
    Spectrum::new(values, 4.0 * f64::EPSILON * n.max(1) as f64)
}

/// Exact count of roots of `p` in `[a, b]`.
pub fn count_closed_exact(
    p: &IntegerPolynomial,
    a: &Rational,
    b: &Rational,
) -> Result<usize, SpectralError> {
    if a > b {
        return Err(SpectralError::BadInterval {
            a: a.clone(),
            b: b.clone(),
        });
    }
    Ok(p.count_roots_geq(a)? - p.count_roots_geq(b)? + p.multiplicity_at(b)?)
}

/// Numeric count of spectrum values in `[a - eps, b + eps]`.
pub fn count_closed_numeric(s: &Spectrum, a: &Rational, b: &Rational) -> Result<usize, SpectralError> {
    if a > b {
        return Err(SpectralError::BadInterval {
            a: a.clone(),
            b: b.clone(),
        });
    }
    Ok(s.count_in(to_f64(a), to_f64(b), NUMERIC_EPS))
}

/// `m_G[a, b]`.
pub fn m_interval(
    g: &Graph,
    a: &Rational,
    b: &Rational,
    mode: CountMode,
) -> Result<IntervalCount, SpectralError> {
    let count = match mode {
        CountMode::Exact => count_closed_exact(&laplacian_char_poly(g), a, b)?,
        CountMode::Numeric => count_closed_numeric(&laplacian_spectrum(g), a, b)?,
    };
    Ok(IntervalCount {
        a: a.clone(),
        b: b.clone(),
        count,
        mode,
    })
}

/// The `k`-th largest Laplacian eigenvalue, and whether it is exactly an integer.
#[derive(Debug, Clone, PartialEq)]
pub struct MuK {
    pub value: f64,
    /// `Some(r)` when the eigenvalue equals the integer `r` exactly.
    pub exact: Option<i64>,
}

/// Whether the `k`-th largest root of `p` is exactly `r`.
pub fn kth_root_equals(p: &IntegerPolynomial, k: usize, r: &Rational) -> Result<bool, PolyError> {
    let geq = p.count_roots_geq(r)?;
    let gt = geq - p.multiplicity_at(r)?;
    Ok(gt < k && k <= geq)
}

/// Whether the `k`-th largest root of `p` is strictly below `r`.
pub fn kth_root_below(p: &IntegerPolynomial, k: usize, r: &Rational) -> Result<bool, PolyError> {
    Ok(p.count_roots_geq(r)? < k)
}

pub fn mu_k(g: &Graph, k: usize) -> Result<MuK, SpectralError> {
    let n = g.order();
    if k == 0 || k > n {
        return Err(SpectralError::IndexOutOfRange { k, n });
    }
    let value = laplacian_spectrum(g).nth(k);
    let p = laplacian_char_poly(g);
    // The polynomial is monic, so any rational eigenvalue is an integer.
    let r = value.round() as i64;
    let exact = kth_root_equals(&p, k, &integer(r))?.then_some(r);
    Ok(MuK { value, exact })
}

/// Exact multiplicity of each integer eigenvalue in `0..=n`.
pub fn integer_eigenvalues(p: &IntegerPolynomial, n: usize) -> Vec<(i64, usize)> {
    (0..=n as i64)
        .filter_map(|r| {
            let m = p.multiplicity_at(&integer(r)).ok()?;
            (m > 0).then_some((r, m))
        })
        .collect()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn k4e() -> Graph {
        Graph::complete(4).unwrap().delete_edge(0, 1).unwrap()
    }

    #[test]
    fn char_poly_small() {
        let k2 = laplacian_char_poly(&Graph::complete(2).unwrap());
        assert_eq!(k2, IntegerPolynomial::from_i64(&[0, -2, 1]));
        let k3 = laplacian_char_poly(&Graph::complete(3).unwrap());
        assert_eq!(k3, IntegerPolynomial::from_i64(&[0, 9, -6, 1]));
        let k1 = laplacian_char_poly(&Graph::complete(1).unwrap());
        assert_eq!(k1, IntegerPolynomial::from_i64(&[0, 1]));
    }

    #[test]
    fn char_poly_of_general_symmetric_matrix() {
        // [[2,1],[1,2]]: x^2 - 4x + 3.
        let m = IntegerSymmetricMatrix::from_rows(&[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(char_poly(&m).unwrap(), IntegerPolynomial::from_i64(&[3, -4, 1]));
        let z = IntegerSymmetricMatrix::zeros(3);
        assert_eq!(char_poly(&z).unwrap(), IntegerPolynomial::from_i64(&[0, 0, 0, 1]));
    }

    #[test]
    fn interval_counts() {
        let g = k4e();
        let four = integer(4);
        assert_eq!(m_interval(&g, &four, &four, CountMode::Exact).unwrap().count, 2);
        assert_eq!(m_interval(&g, &four, &four, CountMode::Numeric).unwrap().count, 2);
        assert_eq!(
            m_interval(&g, &integer(0), &integer(4), CountMode::Exact).unwrap().count,
            4
        );
        assert_eq!(
            m_interval(&g, &rational(1, 2), &rational(5, 2), CountMode::Exact).unwrap().count,
            1
        );
        assert!(matches!(
            m_interval(&g, &integer(3), &integer(2), CountMode::Exact),
            Err(SpectralError::BadInterval { .. })
        ));
    }

    #[test]
    fn count_roots_on_laplacians() {
        let p = laplacian_char_poly(&k4e());
        assert_eq!(p.count_roots_geq(&integer(4)).unwrap(), 2);
        let p6 = laplacian_char_poly(&Graph::path(6).unwrap());
        assert_eq!(p6.count_roots_geq(&integer(3)).unwrap(), 2);
        let k3 = laplacian_char_poly(&Graph::complete(3).unwrap());
        assert_eq!(k3.multiplicity_at(&integer(3)).unwrap(), 2);
    }

    #[test]
    fn mu_k_exactness() {
        for n in 2..7 {
            let m = mu_k(&Graph::complete(n).unwrap(), n).unwrap();
            assert_eq!(m.exact, Some(0));
        }
        let p4 = mu_k(&Graph::path(4).unwrap(), 1).unwrap();
        assert!((p4.value - (2.0 + 2f64.sqrt())).abs() < 1e-10);
        assert_eq!(p4.exact, None);
        assert!(matches!(
            mu_k(&Graph::path(4).unwrap(), 5),
            Err(SpectralError::IndexOutOfRange { k: 5, n: 4 })
        ));
        assert!(mu_k(&Graph::path(4).unwrap(), 0).is_err());
    }

    #[test]
    fn path_closed_form() {
        let s2 = path_spectrum_closed_form(2);
        assert!((s2.nth(1) - 2.0).abs() < 1e-12 && s2.nth(2).abs() < 1e-12);
        let s3 = path_spectrum_closed_form(3);
        for (v, e) in s3.values().iter().zip([3.0, 1.0, 0.0]) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn integer_eigenvalue_listing() {
        let p = laplacian_char_poly(&k4e());
        assert_eq!(integer_eigenvalues(&p, 4), vec![(0, 1), (2, 1), (4, 2)]);
    }

    #[test]
    fn zero_multiplicity_counts_components() {
        let g = Graph::complete(3)
            .unwrap()
            .disjoint_union(&Graph::path(2).unwrap())
            .disjoint_union(&Graph::empty(2));
        let p = laplacian_char_poly(&g);
        assert_eq!(p.multiplicity_at(&integer(0)).unwrap(), g.component_count());
    }
}
