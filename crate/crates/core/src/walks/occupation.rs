use crate::error::{Error, Result};
use crate::numerics::binomial;
use crate::Graph;

/// Largest k-particle basis any walk or WL routine will enumerate.
pub const MAX_BASIS: usize = 2_000_000;

/// Largest occupation space handled by dense spectral routines.
pub const MAX_DENSE_BASIS: usize = 4096;

/// Lexicographically ordered k-subsets of `0..n`, with O(k) ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupationBasis {
    n: usize,
    k: usize,
    subsets: Vec<usize>,
}

impl OccupationBasis {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > 3 || k > n {
            return Err(Error::InvalidArgument(format!(
                "particle number {k} must lie in 1..=min(3, n) for n = {n}"
            )));
        }
        let dim = binomial(n, k);
        if dim > MAX_BASIS {
            return Err(Error::ResourceLimit {
                what: "occupation basis size",
                requested: dim,
                limit: MAX_BASIS,
            });
        }
        let mut subsets = Vec::with_capacity(dim * k);
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            subsets.extend_from_slice(&cur);
            // advance to the next combination in lexicographic order
            let mut i = k;
            while i > 0 && cur[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            cur[i - 1] += 1;
            for j in i..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
        Ok(OccupationBasis { n, k, subsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.subsets.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Sorted node tuple of basis state `idx`.
    pub fn subset(&self, idx: usize) -> &[usize] {
        &self.subsets[idx * self.k..(idx + 1) * self.k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.subsets.chunks(self.k)
    }

    /// Position of a sorted, duplicate-free tuple, or `None` if it is not one.
    pub fn index_of(&self, nodes: &[usize]) -> Option<usize> {
        if nodes.len() != self.k
            || nodes.windows(2).any(|w| w[0] >= w[1])
            || nodes.last().is_some_and(|&x| x >= self.n)
        {
            return None;
        }
        // count combinations that precede `nodes` lexicographically
        let mut rank = 0;
        let mut lo = 0;
        for (pos, &c) in nodes.iter().enumerate() {
            let rest = self.k - pos - 1;
            for skipped in lo..c {
                rank += binomial(self.n - skipped - 1, rest);
            }
            lo = c + 1;
        }
        Some(rank)
    }
}

/// k-particle occupation graph in adjacency-list form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupationGraph {
    pub basis: OccupationBasis,
    pub neighbors: Vec<Vec<usize>>,
}

impl OccupationGraph {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.neighbors[idx].len()
    }

    /// Dense [`Graph`] over the basis; refused above [`MAX_DENSE_BASIS`].
    pub fn to_graph(&self) -> Result<Graph> {
        let dim = self.len();
        if dim > MAX_DENSE_BASIS {
            return Err(Error::ResourceLimit {
                what: "dense occupation graph",
                requested: dim,
                limit: MAX_DENSE_BASIS,
            });
        }
        let edges = self
            .neighbors
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)));
        Graph::from_edges(dim, edges)
    }

    pub fn adjacency<T: crate::Real>(&self) -> Result<crate::Matrix<T>> {
        Ok(self.to_graph()?.adjacency())
    }
}

/// Builds the graph on k-subsets where two subsets are adjacent iff one is
/// obtained from the other by moving a single particle along an edge of `g`.
pub fn occupation_graph(g: &Graph, k: usize) -> Result<OccupationGraph> {
    let basis = OccupationBasis::new(g.n(), k)?;
    let mut neighbors = Vec::with_capacity(basis.len());
    let mut moved = vec![0usize; k];
    for subset in basis.iter() {
        let mut ns = Vec::new();
        for (pos, &v) in subset.iter().enumerate() {
            for w in g.neighbors(v) {
                if subset.contains(&w) {
                    continue;
                }
                moved.copy_from_slice(subset);
                moved[pos] = w;
                moved.sort_unstable();
                ns.push(basis.index_of(&moved).expect("hop stays in basis"));
            }
        }
        ns.sort_unstable();
        neighbors.push(ns);
    }
    Ok(OccupationGraph { basis, neighbors })
}
