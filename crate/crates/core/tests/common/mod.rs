//! Helpers shared by the integration test targets. Everything here is written
//! against plain arrays so it can serve as an oracle for the library.

#![allow(dead_code)]

use qpe_core::{Graph, Matrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random graph with `n` drawn from `lo..=hi` and a random edge density.
pub fn random_graph(rng: &mut impl Rng, lo: usize, hi: usize) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let p = rng.gen_range(0.1..0.9);
    gnp(rng, n, p)
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn max_abs_diff(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Integer adjacency power by repeated multiplication.
pub fn int_power(g: &Graph, m: u32) -> Vec<Vec<i64>> {
    let n = g.n();
    let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..m {
        p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).filter(|&k| g.has_edge(k, j)).map(|k| p[i][k]).sum())
                    .collect()
            })
            .collect();
    }
    p
}

/// Every maximum independent set, by scanning all `2^n` subsets.
pub fn brute_mis(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let edges = g.edges();
    let mut best = 0;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if edges.iter().any(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1) {
            continue;
        }
        let size = mask.count_ones();
        if size > best {
            best = size;
            out.clear();
        }
        if size == best {
            out.push(mask);
        }
    }
    out
}

/// `k`-subsets of `0..n` as bitmasks, ordered lexicographically by their
/// sorted element lists.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    all.sort();
    all
}

/// Two subsets are adjacent when they differ by moving one element along an
/// edge of `g`.
pub fn subsets_adjacent(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    let only_a: Vec<usize> = a.iter().copied().filter(|x| !b.contains(x)).collect();
    let only_b: Vec<usize> = b.iter().copied().filter(|x| !a.contains(x)).collect();
    only_a.len() == 1 && only_b.len() == 1 && g.has_edge(only_a[0], only_b[0])
}

/// Sorted-multiset half-ℓ₁ distance, computed independently of the library.
pub fn sorted_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    0.5 * x.iter().zip(&y).map(|(p, q)| (p - q).abs()).sum::<f64>()
}

/// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_min_eigenvalue(m: &Matrix<f64>) -> f64 {
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).fold(f64::INFINITY, f64::min)
}

pub mod props;
