//! With `c = cos ϑ`, `s = sin ϑ` and `f(x) = c² + s² e^{ixt}`, a node's
//! dephasing factor is `ϱ_v = e^{i h_v t} Π_{w≠v} f(J_vw)`. Products are
//! always formed directly; dividing out a factor fails when `f` vanishes.

use std::collections::BTreeMap;

use super::IsingModel;
use crate::error::{Error, Result};
use crate::{Complex, CorrelationMatrix, Graph, Real};

struct Pulse<T> {
    c2: T,
    s2: T,
    t: T,
}

impl<T: Real> Pulse<T> {
    fn new(theta: T, t: T) -> Self {
        let (s, c) = theta.sin_cos();
        Pulse {
            c2: c * c,
            s2: s * s,
            t,
        }
    }

    fn phase(&self, x: T) -> Complex<T> {
        let a = x * self.t;
        Complex::new(a.cos(), a.sin())
    }

    fn f(&self, x: T) -> Complex<T> {
        self.phase(x) * self.s2 + self.c2
    }

    /// `2 s² c²`
    fn amp(&self) -> T {
        T::of(2.0) * self.s2 * self.c2
    }
}

/// Total occupation `Σ_v ⟨n_v⟩` of the field-free model `J = A`, written
/// through the degree histogram: `2s²c² Σ_κ m(κ) Re{1 − f(1)^κ}`.
pub fn total_occupation_density<T: Real>(g: &Graph, theta: T, t: T) -> T {
    let p = Pulse::new(theta, t);
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for d in g.degrees() {
        *hist.entry(d).or_default() += 1;
    }
    let f1 = p.f(T::one());
    let sum: T = hist
        .iter()
        .map(|(&kappa, &count)| T::of_usize(count) * (T::one() - f1.powi(kappa as i32).re))
        .sum();
    p.amp() * sum
}

/// Total occupation of the field-free model after `R(−φ) e^{−iHt} R(ϑ)`:
/// `Σ_v [c_ϑ² s_φ² + s_ϑ² c_φ² − 2 s_ϑ c_ϑ s_φ c_φ Re ϱ_v]`.
pub fn total_occupation_generic_pulse<T: Real>(g: &Graph, theta: T, phi: T, t: T) -> T {
    let p = Pulse::new(theta, t);
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let f1 = p.f(T::one());
    let diag = ct * ct * sp * sp + st * st * cp * cp;
    let cross = T::of(2.0) * st * ct * sp * cp;
    g.degrees()
        .into_iter()
        .map(|d| diag - cross * f1.powi(d as i32).re)
        .sum()
}

fn rho<T: Real>(p: &Pulse<T>, m: &IsingModel<T>, v: usize, skip: Option<usize>) -> Complex<T> {
    let j = m.j();
    let mut acc = p.phase(m.h()[v]);
    for w in 0..m.n() {
        if w != v && Some(w) != skip {
            acc *= p.f(j[(v, w)]);
        }
    }
    acc
}

/// `⟨n_v⟩ = 2s²c² Re{1 − ϱ_v}` for every node.
pub fn local_occupation<T: Real>(g: &Graph, m: &IsingModel<T>, theta: T, t: T) -> Result<Vec<T>> {
    m.check_matches(g)?;
    let p = Pulse::new(theta, t);
    Ok((0..g.n())
        .map(|v| p.amp() * (T::one() - rho(&p, m, v, None).re))
        .collect())
}

fn pair_unchecked<T: Real>(p: &Pulse<T>, m: &IsingModel<T>, u: usize, v: usize) -> T {
    let j = m.j();
    let h = m.h();
    let juv = j[(u, v)];
    let half = T::of(0.5);
    // ϱ restricted to w ∉ {u, v}, and w± = Π_{w∉{u,v}} f(J_uw ± J_vw)
    let rho_u = rho(p, m, u, Some(v));
    let rho_v = rho(p, m, v, Some(u));
    let mut w_plus = Complex::new(T::one(), T::zero());
    let mut w_minus = w_plus;
    for w in 0..m.n() {
        if w != u && w != v {
            w_plus *= p.f(j[(u, w)] + j[(v, w)]);
            w_minus *= p.f(j[(u, w)] - j[(v, w)]);
        }
    }
    let w_uv = (p.phase(juv) + T::one()) * half;
    let z = Complex::new(T::one(), T::zero()) - w_uv * (rho_u + rho_v)
        + p.phase(h[u] + h[v] + juv) * w_plus * half
        + p.phase(h[u] - h[v]) * w_minus * half;
    let a = p.amp();
    a * a * z.re
}

/// `⟨n_u n_v⟩` for `u ≠ v`.
pub fn pair_occupation<T: Real>(
    g: &Graph,
    m: &IsingModel<T>,
    theta: T,
    t: T,
    v1: usize,
    v2: usize,
) -> Result<T> {
    m.check_matches(g)?;
    g.check_node(v1)?;
    g.check_node(v2)?;
    if v1 == v2 {
        return Err(Error::SameNode(v1));
    }
    Ok(pair_unchecked(&Pulse::new(theta, t), m, v1, v2))
}

/// Covariance `⟨n_u n_v⟩ − ⟨n_u⟩⟨n_v⟩`; the diagonal is `⟨n_v⟩ − ⟨n_v⟩²`.
pub fn correlation_closed_form<T: Real>(
    g: &Graph,
    m: &IsingModel<T>,
    theta: T,
    t: T,
) -> Result<CorrelationMatrix<T>> {
    let occ = local_occupation(g, m, theta, t)?;
    let p = Pulse::new(theta, t);
    Ok(CorrelationMatrix::from_upper(g.n(), |u, v| {
        if u == v {
            occ[u] - occ[u] * occ[u]
        } else {
            pair_unchecked(&p, m, u, v) - occ[u] * occ[v]
        }
    }))
}

/// Agreement tolerance of [`srg_two_value_decompose`].
pub const TWO_VALUE_TOL: f64 = 1e-9;

/// Splits the off-diagonal entries of `c` into one value on edges and one on
/// non-edges. Fails with the larger within-class spread when either class
/// is not constant to [`TWO_VALUE_TOL`]. An empty class reports 0.
pub fn srg_two_value_decompose<T: Real>(c: &CorrelationMatrix<T>, g: &Graph) -> Result<(T, T)> {
    if c.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: c.n(),
        });
    }
    let mut adj: Option<(T, T)> = None;
    let mut non: Option<(T, T)> = None;
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            let x = c[(u, v)];
            let slot = if g.has_edge(u, v) { &mut adj } else { &mut non };
            *slot = Some(match *slot {
                None => (x, x),
                Some((lo, hi)) => (lo.min(x), hi.max(x)),
            });
        }
    }
    let spread = |r: Option<(T, T)>| r.map_or(T::zero(), |(lo, hi)| hi - lo);
    let worst = spread(adj).max(spread(non));
    if worst > T::of(TWO_VALUE_TOL) {
        return Err(Error::NotTwoValued {
            spread: worst.as_f64(),
        });
    }
    let mid = |r: Option<(T, T)>| r.map_or(T::zero(), |(lo, hi)| (lo + hi) * T::of(0.5));
    Ok((mid(adj), mid(non)))
}
