//! Classical and quantum walk encoders: RRWP, continuous 1- and 2-particle
//! quantum walks, the discrete 2-particle quantum-inspired walk, XY-model
//! correlations and time-averaged transition probabilities.

mod encoders;
mod init;
mod occupation;

pub use encoders::{
    cqrw1, cqrw2, localized_signature, qirw2, rrwp, time_avg_transition, xy2_correlations,
};
pub use init::InitSpec;
pub use occupation::{
    occupation_graph, OccupationBasis, OccupationGraph, MAX_BASIS, MAX_DENSE_BASIS,
};

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Matrix;
use crate::Real;

/// `K × n × n` stack of pair features; slice `k` is an `n × n` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodingTensor<T> {
    steps: usize,
    n: usize,
    values: Vec<T>,
}

impl<T: Real> EncodingTensor<T> {
    pub fn from_slices(n: usize, slices: Vec<Matrix<T>>) -> Result<Self> {
        let mut values = Vec::with_capacity(slices.len() * n * n);
        for s in &slices {
            if s.rows() != n || s.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.rows(),
                });
            }
            values.extend_from_slice(s.as_slice());
        }
        Ok(EncodingTensor {
            steps: slices.len(),
            n,
            values,
        })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major `[k][i][j]` values.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn slice_values(&self, k: usize) -> &[T] {
        let m = self.n * self.n;
        &self.values[k * m..(k + 1) * m]
    }

    pub fn slice(&self, k: usize) -> Matrix<T> {
        Matrix::from_row_major(self.n, self.n, self.slice_values(k).to_vec())
            .expect("slice has n*n entries")
    }

    pub fn slices(&self) -> Vec<Matrix<T>> {
        (0..self.steps).map(|k| self.slice(k)).collect()
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|x| x.is_finite())
    }

    /// Conjugates every slice by a node relabeling.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let slices = self.slices().iter().map(|s| s.permuted(perm)).collect();
        Self::from_slices(self.n, slices).expect("shape preserved")
    }
}

/// Deterministic grid `t_k = kπ/K`, `k = 1..=K`.
pub fn default_times<T: Real>(steps: usize) -> Vec<T> {
    (1..=steps)
        .map(|k| T::PI() * T::of_usize(k) / T::of_usize(steps))
        .collect()
}

/// `K` seeded uniform samples on `(0.1, π]`, in draw order.
pub fn random_times<T: Real>(steps: usize, seed: u64) -> Vec<T> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let span = std::f64::consts::PI - 0.1;
    (0..steps)
        .map(|_| T::of(std::f64::consts::PI - span * rng.gen::<f64>()))
        .collect()
}
