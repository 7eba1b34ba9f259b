use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// A symmetric positive-definite bilinear form on `ℝⁿ` (the metric at a point).
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct {
    n: usize,
    matrix: Vec<f64>,
    inverse: Vec<f64>,
}

impl InnerProduct {
    /// Validates symmetry and positive-definiteness of a row-major matrix.
    pub fn new(n: usize, matrix: Vec<f64>) -> Result<Self> {
        assert_eq!(matrix.len(), n * n);
        let scale = matrix.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let mut asym: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                asym = asym.max((matrix[i * n + j] - matrix[j * n + i]).abs());
            }
        }
        if asym > 1e-12 * scale {
            return Err(Error::NotSymmetric { asymmetry: asym });
        }
        let m = DMatrix::from_row_slice(n, n, &matrix);
        let eig = SymmetricEigen::new(m.clone());
        let min_eigenvalue = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if !(min_eigenvalue > 0.0) {
            return Err(Error::NotPositiveDefinite { min_eigenvalue });
        }
        let inv = m
            .cholesky()
            .ok_or(Error::NotPositiveDefinite { min_eigenvalue })?
            .inverse();
        let inverse = (0..n * n).map(|k| inv[(k / n, k % n)]).collect();
        Ok(InnerProduct { n, matrix, inverse })
    }

    pub fn euclidean(n: usize) -> Self {
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = 1.0;
        }
        InnerProduct {
            n,
            matrix: m.clone(),
            inverse: m,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn inverse(&self) -> &[f64] {
        &self.inverse
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.n + j]
    }

    pub fn dot(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            if u[i] == 0.0 {
                continue;
            }
            let row = &self.matrix[i * n..(i + 1) * n];
            s += u[i] * row.iter().zip(v).map(|(g, x)| g * x).sum::<f64>();
        }
        s
    }

    pub fn norm2(&self, u: &[f64]) -> f64 {
        self.dot(u, u)
    }

    /// Index lowering `v ↦ g(v, ·)`.
    pub fn lower(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[i * n + j] * v[j]).sum())
            .collect()
    }

    /// Gram–Schmidt with respect to this inner product. Vectors that become
    /// numerically dependent are dropped.
    pub fn orthonormalize(&self, vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for v in vectors {
            let mut w = v.clone();
            // two passes for stability
            for _ in 0..2 {
                for e in &out {
                    let c = self.dot(&w, e);
                    for (wi, ei) in w.iter_mut().zip(e) {
                        *wi -= c * ei;
                    }
                }
            }
            let norm = self.norm2(&w).sqrt();
            if norm > 1e-10 {
                out.push(w.into_iter().map(|x| x / norm).collect());
            }
        }
        out
    }

    /// `g(·,·) ↦ ½(g(·,·) + g(A·,A·))` for a row-major endomorphism `A`.
    pub fn averaged(&self, a: &[f64]) -> Result<InnerProduct> {
        let n = self.n;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    for l in 0..n {
                        s += a[k * n + i] * self.matrix[k * n + l] * a[l * n + j];
                    }
                }
                m[i * n + j] = 0.5 * (self.matrix[i * n + j] + s);
            }
        }
        InnerProduct::new(n, m)
    }
}
