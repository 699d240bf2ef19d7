//! Exact statevector simulation of the pulse / Ising schedules and of XY
//! evolution on occupation subspaces. Node `v` is bit `v` of the basis index.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::isingcf::{IsingModel, PulseSchedule};
use crate::numerics::{propagate, sym_eig};
use crate::walks::occupation_graph;
use crate::{Complex, CorrelationMatrix, Graph, Real};

/// Default qubit ceiling (2^24 amplitudes).
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Qubit ceiling, overridable through `QPE_MAX_QUBITS`.
pub fn max_qubits() -> usize {
    std::env::var("QPE_MAX_QUBITS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

fn check_qubits(n: usize) -> Result<()> {
    let limit = max_qubits();
    if n > limit || n >= usize::BITS as usize {
        return Err(Error::ResourceLimit {
            what: "simulator qubits",
            requested: n,
            limit,
        });
    }
    Ok(())
}

/// Full `2^n` statevector.
#[derive(Debug, Clone, PartialEq)]
pub struct State<T> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> State<T> {
    /// `|0…0⟩`
    pub fn vacuum(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n_qubits];
        amps[0] = Complex::new(T::one(), T::zero());
        Ok(State { n_qubits, amps })
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        check_qubits(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_qubits,
                found: amps.len(),
            });
        }
        Ok(State { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.n_qubits {
            return Err(Error::IndexOutOfRange {
                index: v,
                len: self.n_qubits,
            });
        }
        Ok(())
    }
}

/// Diagonal energies `E_σ = Σ_{u<v} J_uv σ_u σ_v + Σ_v h_v σ_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyTable<T>(Vec<T>);

impl<T: Real> EnergyTable<T> {
    pub fn new(m: &IsingModel<T>) -> Result<Self> {
        let n = m.n();
        check_qubits(n)?;
        let j = m.j();
        let mut e = vec![T::zero(); 1 << n];
        // E(σ) = E(σ minus its lowest bit v) + h_v + Σ_{w ∈ σ, w ≠ v} J_vw
        for sigma in 1usize..(1 << n) {
            let v = sigma.trailing_zeros() as usize;
            let rest = sigma & (sigma - 1);
            let mut x = e[rest] + m.h()[v];
            let mut bits = rest;
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                x += j[(v, w)];
                bits &= bits - 1;
            }
            e[sigma] = x;
        }
        Ok(EnergyTable(e))
    }

    pub fn energies(&self) -> &[T] {
        &self.0
    }
}

/// `R(ϑ)^{⊗n}|0…0⟩`, amplitude `(cos ϑ)^{n−|σ|}(sin ϑ)^{|σ|}`.
pub fn prepare_pulse_state<T: Real>(n: usize, theta: T) -> Result<State<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    check_qubits(n)?;
    let (s, c) = theta.sin_cos();
    let amps = (0..1usize << n)
        .into_par_iter()
        .map(|sigma| {
            let k = sigma.count_ones() as i32;
            Complex::new(c.powi(n as i32 - k) * s.powi(k), T::zero())
        })
        .collect();
    Ok(State { n_qubits: n, amps })
}

/// Multiplies each amplitude by `e^{−iE_σ t}`.
pub fn ising_phase<T: Real>(s: &State<T>, e: &EnergyTable<T>, t: T) -> Result<State<T>> {
    if e.0.len() != s.amps.len() {
        return Err(Error::DimensionMismatch {
            expected: s.amps.len(),
            found: e.0.len(),
        });
    }
    let mut out = s.clone();
    apply_phase(&mut out, e, t);
    Ok(out)
}

fn apply_phase<T: Real>(s: &mut State<T>, e: &EnergyTable<T>, t: T) {
    s.amps.par_iter_mut().zip(e.0.par_iter()).for_each(|(a, &en)| {
        let (sn, cs) = (-en * t).sin_cos();
        *a *= Complex::new(cs, sn);
    });
}

/// Rotates every qubit by `[[cos a, −sin a], [sin a, cos a]]`, so
/// `|0⟩ → cos a|0⟩ + sin a|1⟩`; `−a` inverts it.
pub fn apply_y_pulse<T: Real>(s: &State<T>, angle: T) -> State<T> {
    let mut out = s.clone();
    rotate_all(&mut out, angle);
    out
}

fn rotate_all<T: Real>(s: &mut State<T>, angle: T) {
    let (sn, cs) = angle.sin_cos();
    for q in 0..s.n_qubits {
        let stride = 1usize << q;
        s.amps.par_chunks_mut(2 * stride).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = x0 * cs - x1 * sn;
                *a1 = x0 * sn + x1 * cs;
            }
        });
    }
}

/// Runs a [`PulseSchedule`] from `|0…0⟩`.
pub fn evolve_layers<T: Real>(g: &Graph, m: &IsingModel<T>, sched: &PulseSchedule<T>) -> Result<State<T>> {
    sched.validate()?;
    m.check_matches(g)?;
    let e = EnergyTable::new(m)?;
    let mut s = State::vacuum(g.n())?;
    if sched.is_ladder() {
        rotate_all(&mut s, sched.theta[0]);
        for (k, &t) in sched.times.iter().enumerate() {
            apply_phase(&mut s, &e, t);
            rotate_all(&mut s, sched.theta[k + 1]);
        }
    } else {
        let p = sched.layers();
        for (k, (&theta, &t)) in sched.theta.iter().zip(&sched.times).enumerate() {
            rotate_all(&mut s, theta);
            apply_phase(&mut s, &e, t);
            let back = match sched.phi {
                Some(phi) if k + 1 == p => phi,
                _ => theta,
            };
            rotate_all(&mut s, -back);
        }
    }
    Ok(s)
}

/// `⟨n_v⟩ = Σ_{σ_v = 1} |ψ_σ|²`
pub fn expect_n<T: Real>(s: &State<T>, v: usize) -> Result<T> {
    s.check_node(v)?;
    let mask = 1usize << v;
    Ok(s.amps
        .par_iter()
        .enumerate()
        .filter(|(sigma, _)| sigma & mask != 0)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

/// `⟨n_u n_v⟩ = Σ_{σ_u = σ_v = 1} |ψ_σ|²`
pub fn expect_nn<T: Real>(s: &State<T>, u: usize, v: usize) -> Result<T> {
    s.check_node(u)?;
    s.check_node(v)?;
    let mask = (1usize << u) | (1usize << v);
    Ok(s.amps
        .par_iter()
        .enumerate()
        .filter(|(sigma, _)| sigma & mask == mask)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

/// Occupation covariance of a state, accumulated in one pass.
pub fn state_correlation<T: Real>(s: &State<T>) -> CorrelationMatrix<T> {
    let n = s.n_qubits;
    let nn = s
        .amps
        .par_iter()
        .enumerate()
        .fold(
            || vec![T::zero(); n * n],
            |mut acc, (sigma, a)| {
                let p = a.norm_sqr();
                if p != T::zero() {
                    let mut bu = sigma;
                    while bu != 0 {
                        let u = bu.trailing_zeros() as usize;
                        let mut bv = bu;
                        while bv != 0 {
                            let v = bv.trailing_zeros() as usize;
                            acc[u * n + v] += p;
                            bv &= bv - 1;
                        }
                        bu &= bu - 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![T::zero(); n * n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    CorrelationMatrix::from_upper(n, |u, v| nn[u * n + v] - nn[u * n + u] * nn[v * n + v])
}

/// Simulated covariance `⟨n_u n_v⟩ − ⟨n_u⟩⟨n_v⟩` after `sched`.
pub fn correlation_sim<T: Real>(
    g: &Graph,
    m: &IsingModel<T>,
    sched: &PulseSchedule<T>,
) -> Result<CorrelationMatrix<T>> {
    Ok(state_correlation(&evolve_layers(g, m, sched)?))
}

/// Evolves `init` (over the lexicographic k-subset basis) under the
/// occupation-graph adjacency for time `t`.
pub fn xy_subspace_evolve<T: Real>(
    g: &Graph,
    k: usize,
    init: &[Complex<T>],
    t: T,
) -> Result<Vec<Complex<T>>> {
    let occ = occupation_graph(g, k)?;
    if init.len() != occ.len() {
        return Err(Error::DimensionMismatch {
            expected: occ.len(),
            found: init.len(),
        });
    }
    let d = sym_eig(&occ.adjacency::<T>()?)?;
    propagate(&d, t, init)
}
