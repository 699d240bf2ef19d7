use std::ops::Deref;

use crate::error::{Error, Result};
use crate::numerics::Matrix;
use crate::Real;

/// Symmetric `n × n` matrix of pair observables.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix<T>(Matrix<T>);

impl<T: Real> CorrelationMatrix<T> {
    /// Wraps `m` after checking it is finite and symmetric to 1e−12.
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        if !m.all_finite() {
            return Err(Error::NonFinite);
        }
        let asym = m.max_asymmetry();
        let scale = m.max_abs().max(T::one());
        if asym > T::of(1e-12) * scale {
            return Err(Error::NotSymmetric(asym.as_f64()));
        }
        Ok(CorrelationMatrix(m))
    }

    /// Builds from the upper triangle (diagonal included) of `f(u, v)`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Matrix::zeros(n, n);
        for u in 0..n {
            for v in u..n {
                let x = f(u, v);
                m[(u, v)] = x;
                m[(v, u)] = x;
            }
        }
        CorrelationMatrix(m)
    }

    pub fn zeros(n: usize) -> Self {
        CorrelationMatrix(Matrix::zeros(n, n))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        CorrelationMatrix(self.0.permuted(perm))
    }
}

impl<T> Deref for CorrelationMatrix<T> {
    type Target = Matrix<T>;

    fn deref(&self) -> &Matrix<T> {
        &self.0
    }
}
