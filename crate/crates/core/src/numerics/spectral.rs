//! Propagators `e^{−iMt}` and eigenprojectors built from a [`SpectralDecomp`].

use super::{Matrix, SpectralDecomp};
use crate::error::{Error, Result};
use crate::{Complex, Real};

/// Applies `Q e^{−iΛt} Qᵀ` to `v`.
pub fn propagate<T: Real>(d: &SpectralDecomp<T>, t: T, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = d.dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let q = &d.eigenvectors;
    // coefficients in the eigenbasis
    let mut coef = vec![Complex::new(T::zero(), T::zero()); n];
    for (i, vi) in v.iter().enumerate() {
        if vi.re == T::zero() && vi.im == T::zero() {
            continue;
        }
        for (k, ck) in coef.iter_mut().enumerate() {
            *ck += *vi * q[(i, k)];
        }
    }
    for (k, ck) in coef.iter_mut().enumerate() {
        let phase = -d.eigenvalues[k] * t;
        *ck *= Complex::new(phase.cos(), phase.sin());
    }
    let mut out = vec![Complex::new(T::zero(), T::zero()); n];
    for (i, oi) in out.iter_mut().enumerate() {
        let row = q.row(i);
        for (k, ck) in coef.iter().enumerate() {
            *oi += *ck * row[k];
        }
    }
    Ok(out)
}

/// Dense unitary `U = e^{−iMt}` kept as separate real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagator<T> {
    pub re: Matrix<T>,
    pub im: Matrix<T>,
}

impl<T: Real> Propagator<T> {
    /// At `t = 0` the result is exactly the identity rather than `QQᵀ`.
    pub fn new(d: &SpectralDecomp<T>, t: T) -> Self {
        let n = d.dim();
        if t == T::zero() {
            return Propagator {
                re: Matrix::identity(n),
                im: Matrix::zeros(n, n),
            };
        }
        let q = &d.eigenvectors;
        let mut qc = q.clone();
        let mut qs = q.clone();
        for k in 0..n {
            let phase = d.eigenvalues[k] * t;
            let (s, c) = phase.sin_cos();
            for i in 0..n {
                qc[(i, k)] *= c;
                qs[(i, k)] *= s;
            }
        }
        let qt = q.transpose();
        Propagator {
            re: qc.matmul(&qt),
            im: qs.matmul(&qt).scale(-T::one()),
        }
    }

    pub fn dim(&self) -> usize {
        self.re.rows()
    }

    /// `U[(i, j)] = ⟨i|U|j⟩`
    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        Complex::new(self.re[(i, j)], self.im[(i, j)])
    }

    /// Column `j`, i.e. the evolved basis state `U|j⟩`.
    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.dim()).map(|i| self.entry(i, j)).collect()
    }
}

/// Distinct eigenvalues and the orthogonal projectors onto their eigenspaces.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorSet<T> {
    pub eigenvalues: Vec<T>,
    pub projectors: Vec<Matrix<T>>,
}

impl<T: Real> ProjectorSet<T> {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Grouping tolerance `1e−8 · max(1, ρ)`.
pub fn default_projector_tol<T: Real>(d: &SpectralDecomp<T>) -> T {
    T::of(1e-8) * d.spectral_radius().max(T::one())
}

/// Groups eigenvalues closer than `tol` to their neighbour in the ascending
/// list and sums the corresponding rank-one projectors.
pub fn projectors<T: Real>(d: &SpectralDecomp<T>, tol: T) -> ProjectorSet<T> {
    let n = d.dim();
    let q = &d.eigenvectors;
    let mut eigenvalues = Vec::new();
    let mut projectors = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && d.eigenvalues[end] - d.eigenvalues[end - 1] <= tol {
            end += 1;
        }
        let mean = (start..end).map(|k| d.eigenvalues[k]).sum::<T>() / T::of_usize(end - start);
        let p = Matrix::from_fn(n, n, |i, j| (start..end).map(|k| q[(i, k)] * q[(j, k)]).sum());
        eigenvalues.push(mean);
        projectors.push(p);
        start = end;
    }
    ProjectorSet {
        eigenvalues,
        projectors,
    }
}
