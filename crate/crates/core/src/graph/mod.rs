//! Graph data model: dense undirected simple graphs, graph6 I/O, relabeling,
//! and strongly regular graph algebra.

mod graph6;
mod srg;

pub use graph6::{parse_graph6, write_graph6};
pub use srg::{srg_power_coeffs, validate_srg, SrgParams};

use crate::error::{Error, Result};

/// Undirected simple graph stored as a dense symmetric 0/1 adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges in range")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n > 2 {
            g.set_edge(n - 1, 0, true);
        }
        g
    }

    /// Star with the given center and leaves on every other node.
    pub fn star(n: usize, center: usize) -> Self {
        Self::from_edges(n, (0..n).filter(|&v| v != center).map(|v| (center, v)))
            .expect("star edges in range")
    }

    /// Builds a graph from an edge list. Self-loops are rejected; duplicate
    /// edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n {
                return Err(Error::IndexOutOfRange { index: u, len: n });
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, len: n });
            }
            if u == v {
                return Err(Error::SameNode(u));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from a row-major 0/1 matrix, validating symmetry and a
    /// zero diagonal.
    pub fn from_adjacency(n: usize, entries: &[bool]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        for u in 0..n {
            if entries[u * n + u] {
                return Err(Error::SameNode(u));
            }
            for v in (u + 1)..n {
                if entries[u * n + v] != entries[v * n + u] {
                    return Err(Error::NotSymmetric(1.0));
                }
            }
        }
        Ok(Graph {
            n,
            adj: entries.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v);
        self.adj[u * self.n + v] = present;
        self.adj[v * self.n + u] = present;
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        row.iter()
            .enumerate()
            .filter_map(|(u, &e)| if e { Some(u) } else { None })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&e| e).count() / 2
    }

    /// Adjacency as a row-major `f64`-agnostic 0/1 matrix.
    pub fn adjacency<T: crate::Real>(&self) -> crate::Matrix<T> {
        crate::Matrix::from_fn(self.n, self.n, |u, v| {
            if self.has_edge(u, v) {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// Number of common neighbours `|N(u) ∩ N(v)|`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<usize> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::SameNode(u));
        }
        Ok((0..self.n)
            .filter(|&w| self.has_edge(u, w) && self.has_edge(v, w))
            .count())
    }

    pub(crate) fn check_node(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: v,
                len: self.n,
            })
        }
    }

    /// Relabels nodes so that node `u` becomes `perm[u]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.n)?;
        let mut out = Graph::empty(self.n);
        for (u, v) in self.edges() {
            out.set_edge(perm[u], perm[v], true);
        }
        Ok(out)
    }

    /// Disjoint union, with `other`'s nodes shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut out = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            out.set_edge(u, v, true);
        }
        for (u, v) in other.edges() {
            out.set_edge(u + self.n, v + self.n, true);
        }
        out
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }
}

/// Checks that `perm` is a bijection on `0..n`.
pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "length {} does not match {n} nodes",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidPermutation(format!(
                "{p} is out of range or repeated"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Relabels a graph; free-function form of [`Graph::permute`].
pub fn permute(g: &Graph, perm: &[usize]) -> Result<Graph> {
    g.permute(perm)
}

/// Common-neighbour count; free-function form of [`Graph::common_neighbors`].
pub fn common_neighbors(g: &Graph, u: usize, v: usize) -> Result<usize> {
    g.common_neighbors(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<usize>) -> Vec<usize> {
        v.sort_unstable();
        v
    }

    #[test]
    fn complete_graph_is_permutation_invariant() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.permute(&[2, 0, 1]).unwrap(), k3);
    }

    #[test]
    fn reversing_a_path_keeps_its_edges() {
        let p = Graph::path(3);
        assert_eq!(p.permute(&[2, 1, 0]).unwrap(), p);
    }

    #[test]
    fn relabeling_moves_the_star_center() {
        let s = Graph::star(4, 0);
        assert_eq!(s.permute(&[1, 0, 2, 3]).unwrap(), Graph::star(4, 1));
    }

    #[test]
    fn permute_rejects_bad_permutations() {
        let g = Graph::path(3);
        assert!(matches!(g.permute(&[0, 1]), Err(Error::InvalidPermutation(_))));
        assert!(matches!(
            g.permute(&[0, 0, 1]),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            g.permute(&[0, 1, 3]),
            Err(Error::InvalidPermutation(_))
        ));
    }

    #[test]
    fn common_neighbor_examples() {
        assert_eq!(Graph::complete(3).common_neighbors(0, 1).unwrap(), 1);
        assert_eq!(Graph::path(3).common_neighbors(0, 2).unwrap(), 1);
        assert_eq!(Graph::complete(2).common_neighbors(0, 1).unwrap(), 0);
        assert_eq!(
            Graph::complete(2).common_neighbors(1, 1),
            Err(Error::SameNode(1))
        );
    }

    #[test]
    fn common_neighbors_match_adjacency_square() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 4)]).unwrap();
        let a = g.adjacency::<f64>();
        let a2 = a.matmul(&a);
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert_eq!(g.common_neighbors(u, v).unwrap() as f64, a2[(u, v)]);
                }
            }
        }
    }

    #[test]
    fn from_edges_validates() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(Error::SameNode(0)));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn permutation_preserves_degree_multiset() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        let h = g.permute(&[5, 3, 1, 0, 2, 4]).unwrap();
        assert_eq!(sorted(g.degrees()), sorted(h.degrees()));
    }
}
