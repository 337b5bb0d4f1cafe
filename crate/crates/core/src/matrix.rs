//! Exact integer symmetric matrices.

use std::ops::{Add, Neg, Sub};

use crate::graph::Graph;

/// A dense symmetric matrix with `i64` entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSymmetricMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntegerSymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        IntegerSymmetricMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n])
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * m.n + i] = d;
        }
        m
    }

    /// Builds from rows, returning `None` if they are ragged or asymmetric.
    pub fn from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        let m = IntegerSymmetricMatrix {
            n,
            entries: rows.concat(),
        };
        m.is_symmetric().then_some(m)
    }

    /// `D - A` for the graph `g`.
    pub fn laplacian(g: &Graph) -> Self {
        let n = g.order();
        let mut m = Self::zeros(n);
        for v in 0..n {
            m.entries[v * n + v] = g.degree(v) as i64;
            for u in g.neighbors(v) {
                m.entries[v * n + u] = -1;
            }
        }
        debug_assert!(m.is_laplacian());
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Sets `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.n + j] = value;
        self.entries[j * self.n + i] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Zero row sums and off-diagonal entries in `{0, -1}`.
    pub fn is_laplacian(&self) -> bool {
        self.is_symmetric()
            && (0..self.n).all(|i| {
                self.row(i).iter().sum::<i64>() == 0
                    && (0..self.n).all(|j| i == j || matches!(self.get(i, j), 0 | -1))
            })
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.entries
            .iter()
            .map(|&x| (x as f64) * (x as f64))
            .sum::<f64>()
            .sqrt()
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let p = indices.len();
        let mut m = Self::zeros(p);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m.entries[a * p + b] = self.get(i, j);
            }
        }
        m
    }

    /// `lambda * I - self`.
    pub fn shifted(&self, lambda: i64) -> Self {
        let mut m = -self.clone();
        for i in 0..self.n {
            m.entries[i * self.n + i] += lambda;
        }
        m
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|&x| x as f64).collect())
            .collect()
    }
}

impl Add for &IntegerSymmetricMatrix {
    type Output = IntegerSymmetricMatrix;

    fn add(self, rhs: Self) -> IntegerSymmetricMatrix {
        assert_eq!(self.n, rhs.n, "matrix orders differ");
        IntegerSymmetricMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntegerSymmetricMatrix {
    type Output = IntegerSymmetricMatrix;

    fn sub(self, rhs: Self) -> IntegerSymmetricMatrix {
        self + &(-rhs.clone())
    }
}

impl Neg for IntegerSymmetricMatrix {
    type Output = IntegerSymmetricMatrix;

    fn neg(mut self) -> IntegerSymmetricMatrix {
        self.entries.iter_mut().for_each(|x| *x = -*x);
        self
    }
}
