use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Matrix;
use crate::{Graph, Real};

/// Diagonal Ising hamiltonian `Σ_{u<v} J_uv n_u n_v + Σ_v h_v n_v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingModel<T> {
    h: Vec<T>,
    j: Matrix<T>,
}

impl<T: Real> IsingModel<T> {
    pub fn new(h: Vec<T>, j: Matrix<T>) -> Result<Self> {
        let n = h.len();
        if j.rows() != n || j.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: j.rows(),
            });
        }
        if !j.all_finite() || h.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let asym = j.max_asymmetry();
        if asym > T::zero() {
            return Err(Error::NotSymmetric(asym.as_f64()));
        }
        if let Some(v) = (0..n).find(|&v| j[(v, v)] != T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "coupling matrix has a nonzero diagonal at node {v}"
            )));
        }
        Ok(IsingModel { h, j })
    }

    /// `h ≡ 1`, `J = A`.
    pub fn uniform(g: &Graph) -> Self {
        IsingModel {
            h: vec![T::one(); g.n()],
            j: g.adjacency(),
        }
    }

    /// `h ≡ 0`, `J = A`: the density-density model.
    pub fn field_free(g: &Graph) -> Self {
        IsingModel {
            h: vec![T::zero(); g.n()],
            j: g.adjacency(),
        }
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &[T] {
        &self.h
    }

    pub fn j(&self) -> &Matrix<T> {
        &self.j
    }

    pub fn check_matches(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::DimensionMismatch {
                expected: g.n(),
                found: self.n(),
            });
        }
        Ok(())
    }

    /// Relabels nodes so that node `u` becomes `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        crate::graph::check_permutation(perm, self.n())?;
        let mut h = vec![T::zero(); self.n()];
        for (u, &p) in perm.iter().enumerate() {
            h[p] = self.h[u];
        }
        Ok(IsingModel {
            h,
            j: self.j.permuted(perm),
        })
    }
}

/// Alternating pulse / Ising-evolution schedule.
///
/// With `theta.len() == p` each layer is `R(θ_k)`, Ising for `t_k`, then
/// `R(−θ_k)`; `phi`, if set, replaces the final inverse angle. With
/// `theta.len() == p + 1` the schedule is the ladder
/// `R(θ_p) e^{−iH t_p} ⋯ R(θ_1) e^{−iH t_1} R(θ_0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSchedule<T> {
    pub theta: Vec<T>,
    pub times: Vec<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<T>,
}

impl<T: Real> PulseSchedule<T> {
    /// One symmetric layer `R(−θ) e^{−iHt} R(θ)`.
    pub fn symmetric(theta: T, t: T) -> Self {
        PulseSchedule {
            theta: vec![theta],
            times: vec![t],
            phi: None,
        }
    }

    /// One layer `R(−φ) e^{−iHt} R(θ)`.
    pub fn asymmetric(theta: T, t: T, phi: T) -> Self {
        PulseSchedule {
            theta: vec![theta],
            times: vec![t],
            phi: Some(phi),
        }
    }

    pub fn layers(&self) -> usize {
        self.times.len()
    }

    pub fn is_ladder(&self) -> bool {
        self.theta.len() == self.times.len() + 1
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.layers();
        if p == 0 {
            return Err(Error::InvalidArgument("schedule has no layers".into()));
        }
        if self.theta.len() != p && self.theta.len() != p + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} angles do not fit {p} layers (need {p} or {})",
                self.theta.len(),
                p + 1
            )));
        }
        if self.is_ladder() && self.phi.is_some() {
            return Err(Error::InvalidArgument(
                "a final angle is only meaningful for symmetric schedules".into(),
            ));
        }
        let all = self.theta.iter().chain(&self.times).chain(self.phi.iter());
        if all.clone().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }
}
