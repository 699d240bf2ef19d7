use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::Real;

/// Parameters `(ν, k, λ, μ)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub nu: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    /// `k(k − λ − 1) == (ν − k − 1)μ`
    pub fn is_feasible(&self) -> bool {
        let lhs = self.k as i64 * (self.k as i64 - self.lambda as i64 - 1);
        let rhs = (self.nu as i64 - self.k as i64 - 1) * self.mu as i64;
        lhs == rhs
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "srg({},{},{},{})", self.nu, self.k, self.lambda, self.mu)
    }
}

/// Returns the SRG parameters of `g`, or `None` when `g` is not strongly
/// regular. Complete and edgeless graphs are rejected since one of λ, μ has
/// no witnessing pair.
pub fn validate_srg(g: &Graph) -> Option<SrgParams> {
    let n = g.n();
    if n < 2 || !g.is_regular() {
        return None;
    }
    let k = g.degree(0);
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in (u + 1)..n {
            let c = g.common_neighbors(u, v).ok()?;
            let slot = if g.has_edge(u, v) {
                &mut lambda
            } else {
                &mut mu
            };
            match *slot {
                None => *slot = Some(c),
                Some(prev) if prev != c => return None,
                Some(_) => {}
            }
        }
    }
    let params = SrgParams {
        nu: n,
        k,
        lambda: lambda?,
        mu: mu?,
    };
    debug_assert!(params.is_feasible());
    Some(params)
}

/// Coefficients `(α, β, γ)` with `A^m = αI + βJ + γA` for any SRG with
/// parameters `p`.
///
/// Uses `A·J = kJ` and `A² = (k − μ)I + μJ + (λ − μ)A`.
pub fn srg_power_coeffs<T: Real>(p: &SrgParams, m: i64) -> Result<(T, T, T)> {
    if m < 0 {
        return Err(Error::InvalidArgument(format!(
            "exponent must be non-negative, got {m}"
        )));
    }
    let k = T::of_usize(p.k);
    let lambda = T::of_usize(p.lambda);
    let mu = T::of_usize(p.mu);
    let (mut a, mut b, mut c) = (T::one(), T::zero(), T::zero());
    for _ in 0..m {
        (a, b, c) = (c * (k - mu), b * k + c * mu, a + c * (lambda - mu));
    }
    Ok((a, b, c))
}
