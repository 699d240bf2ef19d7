//! Ground states of the detuned Ising cost `E(b) = Σ_{(u,v)∈E} b_u b_v − δ Σ_v b_v`,
//! which for `0 < δ < 1` are exactly the maximum independent sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{sym_eig, Matrix};
use crate::{CorrelationMatrix, Graph, Real};

/// Enumeration ceiling on node count.
pub const MAX_NODES: usize = 30;

pub const DEFAULT_DELTA: f64 = 0.5;

/// Minimal-energy configurations, bit `v` of each mask set iff `b_v = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundStateManifold {
    pub n: usize,
    pub delta: f64,
    pub configs: Vec<u32>,
    pub energy: f64,
}

impl GroundStateManifold {
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    /// Relabels nodes so that node `u` becomes `perm[u]`; configs stay sorted.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        crate::graph::check_permutation(perm, self.n)?;
        let mut configs: Vec<u32> = self
            .configs
            .iter()
            .map(|&b| {
                (0..self.n)
                    .filter(|&v| b >> v & 1 == 1)
                    .fold(0u32, |acc, v| acc | 1 << perm[v])
            })
            .collect();
        configs.sort_unstable();
        Ok(GroundStateManifold {
            configs,
            ..self.clone()
        })
    }
}

/// Energy of one configuration.
pub fn ising_energy(g: &Graph, delta: f64, config: u32) -> f64 {
    let edges = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| config >> u & 1 == 1 && config >> v & 1 == 1)
        .count();
    edges as f64 - delta * config.count_ones() as f64
}

struct MisSearch<'a> {
    nbr: &'a [u32],
    best: u32,
    found: Vec<u32>,
}

impl MisSearch<'_> {
    fn run(&mut self, chosen: u32, size: u32, cand: u32) {
        if size + cand.count_ones() < self.best {
            return;
        }
        if cand == 0 {
            if size > self.best {
                self.best = size;
                self.found.clear();
            }
            self.found.push(chosen);
            return;
        }
        let v = cand.trailing_zeros();
        let bit = 1u32 << v;
        self.run(chosen | bit, size + 1, cand & !bit & !self.nbr[v as usize]);
        self.run(chosen, size, cand & !bit);
    }
}

/// All maximum independent sets, found by include/exclude branching with a
/// cardinality bound. Masks are returned sorted.
pub fn maximum_independent_sets(g: &Graph) -> Result<Vec<u32>> {
    let n = g.n();
    if n > MAX_NODES {
        return Err(Error::ResourceLimit {
            what: "ground-state enumeration nodes",
            requested: n,
            limit: MAX_NODES,
        });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |acc, w| acc | 1 << w))
        .collect();
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut search = MisSearch {
        nbr: &nbr,
        best: 0,
        found: Vec::new(),
    };
    search.run(0, 0, all);
    search.found.sort_unstable();
    Ok(search.found)
}

/// Argmin of `E(b)` over all bitstrings.
pub fn ising_ground_manifold(g: &Graph, delta: f64) -> Result<GroundStateManifold> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "detuning must lie in (0, 1), got {delta}"
        )));
    }
    let configs = maximum_independent_sets(g)?;
    let size = configs.first().map_or(0, |b| b.count_ones());
    Ok(GroundStateManifold {
        n: g.n(),
        delta,
        configs,
        energy: -delta * size as f64,
    })
}

/// `C_ij = ⟨z_i z_j⟩` over the uniform mixture of ground configurations,
/// with `z = 1 − 2b`.
pub fn gs_correlation<T: Real>(m: &GroundStateManifold) -> Result<CorrelationMatrix<T>> {
    if m.is_empty() {
        return Err(Error::EmptyManifold);
    }
    let n = m.n;
    let mut counts = vec![0i64; n * n];
    for &b in &m.configs {
        for i in 0..n {
            let zi = 1 - 2 * (b >> i & 1) as i64;
            for j in i..n {
                let zj = 1 - 2 * (b >> j & 1) as i64;
                counts[i * n + j] += zi * zj;
            }
        }
    }
    let total = T::of_usize(m.len());
    Ok(CorrelationMatrix::from_upper(n, |i, j| {
        T::of(counts[i * n + j] as f64) / total
    }))
}

/// Top-`m` eigenvectors of `c` as columns, ordered by descending eigenvalue,
/// each flipped so its first entry of magnitude above 1e−12 is positive.
pub fn gs_positional_encoding<T: Real>(c: &CorrelationMatrix<T>, m: usize) -> Result<Matrix<T>> {
    let n = c.n();
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "encoding width {m} must lie in 1..={n}"
        )));
    }
    let d = sym_eig(c.matrix())?;
    let q = &d.eigenvectors;
    let mut out = Matrix::zeros(n, m);
    for col in 0..m {
        let src = n - 1 - col;
        let lead = (0..n)
            .map(|i| q[(i, src)])
            .find(|x| x.abs() > T::of(1e-12))
            .unwrap_or(T::one());
        let sign = if lead < T::zero() { -T::one() } else { T::one() };
        for i in 0..n {
            out[(i, col)] = sign * q[(i, src)];
        }
    }
    Ok(out)
}

/// Ladder on `2L` nodes: rails `a_i = i`, `b_i = L + i`, rungs `a_i–b_i`.
/// A crossing at gap `i` adds the diagonal `a_i–b_{i+1}`.
///
/// * kind 0: plain ladder, `L ≥ 2`;
/// * kind 1: crossings at gaps 0 and 2, `L ≥ 4`; a single ground state;
/// * kind 2: odd `L ≥ 5`, crossings at gaps `(L−5)/2` and `(L+1)/2` around
///   the middle rung.
pub fn ladder_graph(kind: u8, length: usize) -> Result<Graph> {
    let bad = |why: &str| {
        Err(Error::InvalidArgument(format!(
            "ladder kind {kind} with length {length}: {why}"
        )))
    };
    let crossings: Vec<usize> = match kind {
        0 if length >= 2 => vec![],
        1 if length >= 4 => vec![0, 2],
        2 if length >= 5 && length % 2 == 1 => vec![(length - 5) / 2, length.div_ceil(2)],
        0 => return bad("need length ≥ 2"),
        1 => return bad("need length ≥ 4"),
        2 => return bad("need odd length ≥ 5"),
        _ => return bad("kind must be 0, 1 or 2"),
    };
    if 2 * length > MAX_NODES {
        return Err(Error::ResourceLimit {
            what: "ladder nodes",
            requested: 2 * length,
            limit: MAX_NODES,
        });
    }
    let l = length;
    let rungs = (0..l).map(|i| (i, l + i));
    let rails = (0..l - 1).flat_map(|i| [(i, i + 1), (l + i, l + i + 1)]);
    let diagonals = crossings.into_iter().map(|i| (i, l + i + 1));
    Graph::from_edges(2 * l, rungs.chain(rails).chain(diagonals))
}
