use super::init::{Norm, Start};
use super::{occupation_graph, EncodingTensor, InitSpec, OccupationGraph};
use crate::error::{Error, Result};
use crate::numerics::{default_projector_tol, projectors, propagate, sym_eig, Matrix, Propagator};
use crate::{Complex, CorrelationMatrix, Graph, Real, SpectralDecomp};

fn need_steps(steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::InvalidArgument("at least one step is required".into()));
    }
    Ok(())
}

fn need_times<T>(times: &[T]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidArgument("time list is empty".into()));
    }
    Ok(())
}

/// Random-walk matrix `D⁻¹A`; rows of isolated nodes stay zero.
fn walk_matrix<T: Real>(g: &Graph) -> Matrix<T> {
    let mut m = g.adjacency::<T>();
    for v in 0..g.n() {
        let d = g.degree(v);
        if d > 0 {
            let inv = T::of_usize(d).recip();
            m.row_mut(v).iter_mut().for_each(|x| *x *= inv);
        }
    }
    m
}

/// Relative random-walk probabilities: slice `k` is `(D⁻¹A)^k`, `k < steps`.
pub fn rrwp<T: Real>(g: &Graph, steps: usize) -> Result<EncodingTensor<T>> {
    need_steps(steps)?;
    let m = walk_matrix::<T>(g);
    let mut slices = Vec::with_capacity(steps);
    let mut p = Matrix::identity(g.n());
    for _ in 0..steps {
        let next = p.matmul(&m);
        slices.push(p);
        p = next;
    }
    EncodingTensor::from_slices(g.n(), slices)
}

/// Single-walker transition probabilities `|⟨j|e^{−iAt}|i⟩|²`, one slice per
/// time.
pub fn cqrw1<T: Real>(g: &Graph, times: &[T]) -> Result<EncodingTensor<T>> {
    need_times(times)?;
    let d = sym_eig(&g.adjacency::<T>())?;
    let n = g.n();
    let slices = times
        .iter()
        .map(|&t| {
            let u = Propagator::new(&d, t);
            Matrix::from_fn(n, n, |i, j| u.entry(j, i).norm_sqr())
        })
        .collect();
    EncodingTensor::from_slices(n, slices)
}

fn two_particle_spectrum<T: Real>(g: &Graph) -> Result<(OccupationGraph, SpectralDecomp<T>)> {
    if g.n() < 2 {
        return Err(Error::InvalidArgument(
            "two-particle walks need at least two nodes".into(),
        ));
    }
    let occ = occupation_graph(g, 2)?;
    let d = sym_eig(&occ.adjacency::<T>()?)?;
    Ok((occ, d))
}

/// Evolves every ensemble member for time `t` and hands each amplitude
/// vector with its weight to `visit`.
fn for_each_evolved<T: Real>(
    d: &SpectralDecomp<T>,
    ensemble: &[(T, Start<T>)],
    t: T,
    mut visit: impl FnMut(T, &[Complex<T>]),
) -> Result<()> {
    let dim = d.dim();
    let needs_full = ensemble.iter().any(|(_, s)| matches!(s, Start::Basis(_)));
    let u = needs_full.then(|| Propagator::new(d, t));
    for (w, start) in ensemble {
        let amps = match (start, &u) {
            (Start::Basis(b), Some(u)) => u.column(*b),
            _ => {
                let v: Vec<Complex<T>> = start
                    .to_dense(dim)
                    .into_iter()
                    .map(|x| Complex::new(x, T::zero()))
                    .collect();
                propagate(d, t, &v)?
            }
        };
        visit(*w, &amps);
    }
    Ok(())
}

/// Pair-outcome probabilities of two hard-core walkers under the occupation
/// hamiltonian; entry `(i, j)` and `(j, i)` hold `P({i, j})`.
pub fn cqrw2<T: Real>(g: &Graph, times: &[T], init: InitSpec) -> Result<EncodingTensor<T>> {
    need_times(times)?;
    let (occ, d) = two_particle_spectrum::<T>(g)?;
    let ensemble = init.ensemble::<T>(g, &occ.basis, Norm::Quantum)?;
    let n = g.n();
    let mut slices = Vec::with_capacity(times.len());
    for &t in times {
        let mut s = Matrix::zeros(n, n);
        for_each_evolved(&d, &ensemble, t, |w, amps| {
            for (b, a) in amps.iter().enumerate() {
                let pair = occ.basis.subset(b);
                let p = w * a.norm_sqr();
                s[(pair[0], pair[1])] += p;
                s[(pair[1], pair[0])] += p;
            }
        })?;
        slices.push(s);
    }
    EncodingTensor::from_slices(n, slices)
}

/// Discrete two-walker analogue of RRWP: slice `k` is
/// `(D₂⁻¹H₂)^k ψ₀` folded onto pairs, with `ψ₀` a probability vector.
pub fn qirw2<T: Real>(g: &Graph, steps: usize, init: InitSpec) -> Result<EncodingTensor<T>> {
    need_steps(steps)?;
    if g.n() < 2 {
        return Err(Error::InvalidArgument(
            "two-particle walks need at least two nodes".into(),
        ));
    }
    let occ = occupation_graph(g, 2)?;
    let dim = occ.len();
    let ensemble = init.ensemble::<T>(g, &occ.basis, Norm::Stochastic)?;
    let mut x = vec![T::zero(); dim];
    for (w, s) in &ensemble {
        for (xi, si) in x.iter_mut().zip(s.to_dense(dim)) {
            *xi += *w * si;
        }
    }
    let n = g.n();
    let mut slices = Vec::with_capacity(steps);
    for _ in 0..steps {
        let mut s = Matrix::zeros(n, n);
        for (b, &p) in x.iter().enumerate() {
            let pair = occ.basis.subset(b);
            s[(pair[0], pair[1])] = p;
            s[(pair[1], pair[0])] = p;
        }
        slices.push(s);
        x = (0..dim)
            .map(|a| {
                let deg = occ.degree(a);
                if deg == 0 {
                    T::zero()
                } else {
                    occ.neighbors[a].iter().map(|&b| x[b]).sum::<T>() / T::of_usize(deg)
                }
            })
            .collect();
    }
    EncodingTensor::from_slices(n, slices)
}

/// Occupation covariance `⟨n_u n_v⟩ − ⟨n_u⟩⟨n_v⟩` of the two-walker state at
/// time `t`. Ensemble inits average the per-start covariance matrices.
pub fn xy2_correlations<T: Real>(g: &Graph, t: T, init: InitSpec) -> Result<CorrelationMatrix<T>> {
    let (occ, d) = two_particle_spectrum::<T>(g)?;
    let ensemble = init.ensemble::<T>(g, &occ.basis, Norm::Quantum)?;
    let n = g.n();
    let mut acc = Matrix::<T>::zeros(n, n);
    let mut occupation = vec![T::zero(); n];
    for_each_evolved(&d, &ensemble, t, |w, amps| {
        occupation.iter_mut().for_each(|x| *x = T::zero());
        for (b, a) in amps.iter().enumerate() {
            let pair = occ.basis.subset(b);
            let p = a.norm_sqr();
            occupation[pair[0]] += p;
            occupation[pair[1]] += p;
            acc[(pair[0], pair[1])] += w * p;
            acc[(pair[1], pair[0])] += w * p;
        }
        for u in 0..n {
            acc[(u, u)] += w * occupation[u];
            for v in 0..n {
                acc[(u, v)] -= w * occupation[u] * occupation[v];
            }
        }
    })?;
    CorrelationMatrix::new(acc)
}

/// Long-time average `Σ_λ |⟨j|P^λ|i⟩|²` of the single-walker transition
/// probability.
pub fn time_avg_transition<T: Real>(g: &Graph) -> Result<Matrix<T>> {
    let d = sym_eig(&g.adjacency::<T>())?;
    let ps = projectors(&d, default_projector_tol(&d));
    let n = g.n();
    Ok(Matrix::from_fn(n, n, |i, j| {
        ps.projectors.iter().map(|p| p[(i, j)] * p[(i, j)]).sum()
    }))
}

/// Per-node ascending-sorted rows of [`time_avg_transition`].
pub fn localized_signature<T: Real>(g: &Graph) -> Result<Vec<Vec<T>>> {
    let p = time_avg_transition::<T>(g)?;
    Ok((0..g.n())
        .map(|i| {
            let mut row = p.row(i).to_vec();
            row.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
            row
        })
        .collect())
}
