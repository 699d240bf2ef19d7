//! Colour refinement: 1-WL, walk-count refinement, GD-WL over real pair
//! features, and 1-WL on k-particle occupation graphs. Colour ids always come
//! from explicit dictionaries over serialised keys, never from hashing.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::{graph_distance, EncoderConfig, ZERO_THRESHOLD};
use crate::numerics::Matrix;
use crate::walks::{localized_signature, occupation_graph, rrwp};
use crate::{Graph, Real};

/// Stable colouring: node → class id, ids contiguous in first-occurrence order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorPartition {
    pub colors: Vec<usize>,
    pub rounds: usize,
}

impl ColorPartition {
    pub fn num_classes(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    /// Class sizes in ascending order.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_classes()];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes.sort_unstable();
        sizes
    }

    /// True when every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &ColorPartition) -> bool {
        let mut image: BTreeMap<usize, usize> = BTreeMap::new();
        self.colors
            .iter()
            .zip(&other.colors)
            .all(|(&a, &b)| *image.entry(a).or_insert(b) == b)
    }
}

/// Dense ids in first-occurrence order.
fn first_occurrence_ids<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut dict: BTreeMap<K, usize> = BTreeMap::new();
    keys.iter()
        .map(|k| {
            let next = dict.len();
            *dict.entry(k.clone()).or_insert(next)
        })
        .collect()
}

pub(crate) fn refine_lists(neighbors: &[Vec<usize>], init: &[usize]) -> ColorPartition {
    let mut colors = first_occurrence_ids(init);
    let mut classes = colors.iter().max().map_or(0, |&c| c + 1);
    let mut rounds = 0;
    loop {
        let keys: Vec<(usize, Vec<usize>)> = neighbors
            .iter()
            .enumerate()
            .map(|(v, ns)| {
                let mut nc: Vec<usize> = ns.iter().map(|&u| colors[u]).collect();
                nc.sort_unstable();
                (colors[v], nc)
            })
            .collect();
        let next = first_occurrence_ids(&keys);
        let next_classes = next.iter().max().map_or(0, |&c| c + 1);
        if next_classes == classes {
            return ColorPartition { colors, rounds };
        }
        colors = next;
        classes = next_classes;
        rounds += 1;
    }
}

fn adjacency_lists(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbors(v).collect()).collect()
}

/// Classic 1-WL to its fixpoint, from `init` or the uniform colouring.
pub fn wl1(g: &Graph, init: Option<&[usize]>) -> Result<ColorPartition> {
    let uniform = vec![0; g.n()];
    let init = match init {
        Some(c) if c.len() != g.n() => {
            return Err(Error::DimensionMismatch {
                expected: g.n(),
                found: c.len(),
            })
        }
        Some(c) => c,
        None => &uniform,
    };
    Ok(refine_lists(&adjacency_lists(g), init))
}

fn walk_counts(g: &Graph) -> Vec<Vec<BigUint>> {
    let n = g.n();
    let mut per_node = vec![Vec::with_capacity(n); n];
    let mut w = vec![BigUint::from(1u32); n];
    for _ in 0..n {
        w = (0..n)
            .map(|v| g.neighbors(v).map(|u| &w[u]).sum::<BigUint>())
            .collect();
        for (v, x) in w.iter().enumerate() {
            per_node[v].push(x.clone());
        }
    }
    per_node
}

/// Partition by the exact walk-count vectors `(A^k 1)_v`, `k = 1..=n`.
pub fn sum_refine(g: &Graph) -> ColorPartition {
    ColorPartition {
        colors: first_occurrence_ids(&walk_counts(g)),
        rounds: g.n(),
    }
}

/// Graph-level GD-WL invariant. Two fingerprints are equal iff every
/// refinement round produced the same multiset of serialised update keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    /// Per round, the sorted distinct keys with their multiplicities.
    pub rounds: Vec<Vec<(String, usize)>>,
    /// Final canonical colours, sorted.
    pub colors: Vec<usize>,
}

impl Fingerprint {
    /// Index of the first round at which two fingerprints disagree.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<usize> {
        if self == other {
            return None;
        }
        let common = self.rounds.len().min(other.rounds.len());
        Some(
            (0..common)
                .find(|&r| self.rounds[r] != other.rounds[r])
                .unwrap_or(common),
        )
    }
}

/// Decimal digits kept from real features before comparison.
pub const DEFAULT_DIGITS: usize = 9;

fn round_feature<T: Real>(x: T, digits: usize) -> String {
    let s = format!("{:.*}", digits, x.as_f64());
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// GD-WL with one real feature channel.
pub fn gdwl<T: Real>(g: &Graph, features: &Matrix<T>, digits: usize) -> Result<Fingerprint> {
    gdwl_channels(g, std::slice::from_ref(features), digits)
}

/// GD-WL with several feature channels: node `v` is recoloured by its own
/// colour and the sorted multiset `{(features[·][v][u], colour(u)) : u ∈ V}`.
/// Colour ids follow the sorted order of the round's keys, so they are
/// comparable across graphs.
pub fn gdwl_channels<T: Real>(g: &Graph, features: &[Matrix<T>], digits: usize) -> Result<Fingerprint> {
    let n = g.n();
    if digits == 0 {
        return Err(Error::InvalidArgument("rounding needs at least one digit".into()));
    }
    for f in features {
        if f.rows() != n || f.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.rows(),
            });
        }
    }
    let cells: Vec<Vec<String>> = (0..n)
        .map(|v| {
            (0..n)
                .map(|u| {
                    features
                        .iter()
                        .map(|f| round_feature(f[(v, u)], digits))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect()
        })
        .collect();
    let mut colors = vec![0usize; n];
    let mut classes = usize::from(n > 0);
    let mut rounds = Vec::new();
    loop {
        let keys: Vec<String> = (0..n)
            .map(|v| {
                let mut parts: Vec<String> = (0..n)
                    .map(|u| format!("({}|{})", cells[v][u], colors[u]))
                    .collect();
                parts.sort_unstable();
                format!("{}:{}", colors[v], parts.concat())
            })
            .collect();
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for k in &keys {
            *counts.entry(k).or_default() += 1;
        }
        let ids: BTreeMap<&str, usize> = counts.keys().enumerate().map(|(i, &k)| (k, i)).collect();
        rounds.push(counts.iter().map(|(k, &c)| (k.to_string(), c)).collect());
        let next: Vec<usize> = keys.iter().map(|k| ids[k.as_str()]).collect();
        let stable = counts.len() == classes;
        colors = next;
        classes = counts.len();
        if stable {
            break;
        }
    }
    colors.sort_unstable();
    Ok(Fingerprint { rounds, colors })
}

/// 1-WL on the k-particle occupation graph, i.e. the k-δ-LWL colouring of
/// k-subsets in lexicographic order.
pub fn occupation_wl(g: &Graph, k: usize) -> Result<ColorPartition> {
    let occ = occupation_graph(g, k)?;
    Ok(refine_lists(&occ.neighbors, &vec![0; occ.len()]))
}

/// Test used by [`distinguish`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Method {
    Wl1,
    SumRefine,
    /// GD-WL with the first `steps` RRWP slices as feature channels.
    GdwlRrwp { steps: usize },
    OccupationWl { k: usize },
    /// Multiset of sorted time-averaged 1-QW transition rows.
    LocalizedSignature,
    /// Sort-flatten distance between encodings.
    Distance { encoder: EncoderConfig },
}

/// Evidence behind a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NodeCount { left: usize, right: usize },
    /// Sorted colours of each graph under a shared dictionary.
    Colors { left: Vec<usize>, right: Vec<usize> },
    /// First GD-WL round whose key multisets differ, if any.
    FingerprintRound { round: Option<usize> },
    Distance { value: f64, threshold: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub distinguished: bool,
    pub method: Method,
    pub witness: Witness,
}

fn shared_colors<K: Ord + Clone>(left: &[K], right: &[K]) -> Witness {
    let all: Vec<K> = left.iter().chain(right).cloned().collect();
    let mut sorted = all.clone();
    sorted.sort();
    sorted.dedup();
    let id = |k: &K| sorted.binary_search(k).expect("key present");
    let mut l: Vec<usize> = left.iter().map(id).collect();
    let mut r: Vec<usize> = right.iter().map(id).collect();
    l.sort_unstable();
    r.sort_unstable();
    Witness::Colors { left: l, right: r }
}

fn joint_refinement(n1: usize, neighbors: &[Vec<usize>]) -> Witness {
    let p = refine_lists(neighbors, &vec![0; neighbors.len()]);
    shared_colors(&p.colors[..n1], &p.colors[n1..])
}

fn union_lists(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let shift = a.len();
    a.iter()
        .cloned()
        .chain(b.iter().map(|ns| ns.iter().map(|&u| u + shift).collect()))
        .collect()
}

/// Runs `method` on both graphs and reports whether it tells them apart.
pub fn distinguish(g1: &Graph, g2: &Graph, method: &Method) -> Result<Verdict> {
    let witness = if g1.n() != g2.n() {
        Witness::NodeCount {
            left: g1.n(),
            right: g2.n(),
        }
    } else {
        match method {
            Method::Wl1 => joint_refinement(g1.n(), &union_lists(&adjacency_lists(g1), &adjacency_lists(g2))),
            Method::SumRefine => shared_colors(&walk_counts(g1), &walk_counts(g2)),
            Method::GdwlRrwp { steps } => {
                let f1 = gdwl_channels(g1, &rrwp::<f64>(g1, *steps)?.slices(), DEFAULT_DIGITS)?;
                let f2 = gdwl_channels(g2, &rrwp::<f64>(g2, *steps)?.slices(), DEFAULT_DIGITS)?;
                Witness::FingerprintRound {
                    round: f1.first_difference(&f2),
                }
            }
            Method::OccupationWl { k } => {
                let o1 = occupation_graph(g1, *k)?;
                let o2 = occupation_graph(g2, *k)?;
                joint_refinement(o1.len(), &union_lists(&o1.neighbors, &o2.neighbors))
            }
            Method::LocalizedSignature => {
                let key = |g: &Graph| -> Result<Vec<Vec<String>>> {
                    Ok(localized_signature::<f64>(g)?
                        .into_iter()
                        .map(|row| row.into_iter().map(|x| round_feature(x, DEFAULT_DIGITS)).collect())
                        .collect())
                };
                shared_colors(&key(g1)?, &key(g2)?)
            }
            Method::Distance { encoder } => {
                let value = graph_distance(&encoder.encode::<f64>(g1)?, &encoder.encode::<f64>(g2)?)?;
                Witness::Distance {
                    value,
                    threshold: ZERO_THRESHOLD,
                }
            }
        }
    };
    let distinguished = match &witness {
        Witness::NodeCount { .. } => true,
        Witness::Colors { left, right } => left != right,
        Witness::FingerprintRound { round } => round.is_some(),
        Witness::Distance { value, threshold } => value > threshold,
    };
    Ok(Verdict {
        distinguished,
        method: method.clone(),
        witness,
    })
}
