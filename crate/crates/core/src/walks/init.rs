use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::OccupationBasis;
use crate::error::{Error, Result};
use crate::{Graph, Real};

/// Initial state of a k-particle walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitSpec {
    /// One walker on node `i` (1-particle walks only).
    Localized1(usize),
    /// Two walkers on nodes `i` and `j` (2-particle walks only).
    Localized(usize, usize),
    /// Uniform superposition over every basis state.
    UniformPairs,
    /// Uniform superposition over the edge pairs `{u, v} ∈ E`.
    UniformEdges,
    /// Incoherent average over every localized basis state. Observables are
    /// computed per start state and then averaged.
    LocalizedAverage,
}

/// One member of an init ensemble.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Start<T> {
    Basis(usize),
    Dense(Vec<T>),
}

impl<T: Real> Start<T> {
    pub(crate) fn to_dense(&self, dim: usize) -> Vec<T> {
        match self {
            Start::Basis(b) => {
                let mut v = vec![T::zero(); dim];
                v[*b] = T::one();
                v
            }
            Start::Dense(v) => v.clone(),
        }
    }
}

/// How a uniform superposition is normalised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Norm {
    /// Unit 2-norm amplitudes.
    Quantum,
    /// Unit 1-norm probability vector.
    Stochastic,
}

impl InitSpec {
    /// Checks the init against `g` and the particle number `k`.
    pub fn validate(&self, g: &Graph, k: usize) -> Result<()> {
        let n = g.n();
        let bad = |why: String| Err(Error::InvalidInit(why));
        match (*self, k) {
            (InitSpec::Localized1(i), 1) => {
                if i >= n {
                    return bad(format!("node {i} out of range for {n} nodes"));
                }
            }
            (InitSpec::Localized(i, j), 2) => {
                if i >= n || j >= n {
                    return bad(format!("pair ({i}, {j}) out of range for {n} nodes"));
                }
                if i == j {
                    return bad(format!("pair ({i}, {j}) must name two distinct nodes"));
                }
            }
            (InitSpec::UniformPairs | InitSpec::LocalizedAverage, _) => {
                if n < k {
                    return bad(format!("{k} walkers need at least {k} nodes"));
                }
            }
            (InitSpec::UniformEdges, 2) => {
                if g.edge_count() == 0 {
                    return bad("uniform_edges needs at least one edge".into());
                }
            }
            (spec, k) => return bad(format!("{spec} is not defined for {k} walkers")),
        }
        Ok(())
    }

    /// Weighted start states whose incoherent mixture this init denotes.
    pub(crate) fn ensemble<T: Real>(
        &self,
        g: &Graph,
        basis: &OccupationBasis,
        norm: Norm,
    ) -> Result<Vec<(T, Start<T>)>> {
        self.validate(g, basis.k())?;
        let dim = basis.len();
        let uniform = |members: Vec<usize>| {
            let count = T::of_usize(members.len());
            let amp = match norm {
                Norm::Quantum => count.sqrt().recip(),
                Norm::Stochastic => count.recip(),
            };
            let mut v = vec![T::zero(); dim];
            for b in members {
                v[b] = amp;
            }
            vec![(T::one(), Start::Dense(v))]
        };
        Ok(match *self {
            InitSpec::Localized1(i) => vec![(T::one(), Start::Basis(i))],
            InitSpec::Localized(i, j) => {
                let pair = [i.min(j), i.max(j)];
                let b = basis.index_of(&pair).expect("validated pair");
                vec![(T::one(), Start::Basis(b))]
            }
            InitSpec::UniformPairs => uniform((0..dim).collect()),
            InitSpec::UniformEdges => uniform(
                g.edges()
                    .into_iter()
                    .map(|(u, v)| basis.index_of(&[u, v]).expect("edge is a pair"))
                    .collect(),
            ),
            InitSpec::LocalizedAverage => {
                let w = T::of_usize(dim).recip();
                (0..dim).map(|b| (w, Start::Basis(b))).collect()
            }
        })
    }
}

impl fmt::Display for InitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitSpec::Localized1(i) => write!(f, "localized:{i}"),
            InitSpec::Localized(i, j) => write!(f, "localized:{i},{j}"),
            InitSpec::UniformPairs => f.write_str("uniform_pairs"),
            InitSpec::UniformEdges => f.write_str("uniform_edges"),
            InitSpec::LocalizedAverage => f.write_str("localized_average"),
        }
    }
}

impl FromStr for InitSpec {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) forms, e.g. `localized:0,3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "uniform_pairs" => return Ok(InitSpec::UniformPairs),
            "uniform_edges" => return Ok(InitSpec::UniformEdges),
            "localized_average" => return Ok(InitSpec::LocalizedAverage),
            _ => {}
        }
        let bad = || Error::InvalidInit(format!("unrecognised init `{s}`"));
        let nodes = s.strip_prefix("localized:").ok_or_else(bad)?;
        let parsed: Vec<usize> = nodes
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match parsed[..] {
            [i] => Ok(InitSpec::Localized1(i)),
            [i, j] => Ok(InitSpec::Localized(i, j)),
            _ => Err(bad()),
        }
    }
}
