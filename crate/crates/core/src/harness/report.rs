use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{fmt_f64, graph_distance, to_json_string, EncoderConfig, ZERO_THRESHOLD};
use crate::error::{Error, Result};
use crate::graph::validate_srg;
use crate::walks::rrwp;
use crate::wltest::{distinguish, gdwl_channels, wl1, Method, DEFAULT_DIGITS};
use crate::{Graph, SrgParams};

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Pairwise distances between the encodings of a family of graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub family: String,
    pub params: Option<SrgParams>,
    pub encoder: EncoderConfig,
    pub zero_threshold: f64,
    pub normalized: bool,
    pub size: usize,
    /// Row-major `size × size` matrix.
    pub distances: Vec<f64>,
}

impl DistanceReport {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.distances[i * self.size + j]
    }

    /// Upper-triangle entries `(i, j, d)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.size).flat_map(move |i| ((i + 1)..self.size).map(move |j| (i, j, self.get(i, j))))
    }

    pub fn min_off_diagonal(&self) -> Option<f64> {
        self.pairs().map(|p| p.2).reduce(f64::min)
    }

    pub fn max_off_diagonal(&self) -> Option<f64> {
        self.pairs().map(|p| p.2).reduce(f64::max)
    }

    /// Min–max scaling of the off-diagonal entries onto `[0, 1]`. A constant
    /// matrix, or one whose largest entry is within the zero threshold, maps
    /// to all zeros so that rounding noise is not blown up.
    pub fn normalized(&self) -> Self {
        let (lo, hi) = match (self.min_off_diagonal(), self.max_off_diagonal()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => (0.0, 0.0),
        };
        let span = hi - lo;
        let distances = (0..self.size * self.size)
            .map(|idx| {
                let (i, j) = (idx / self.size, idx % self.size);
                if i == j || span <= 0.0 || hi <= self.zero_threshold {
                    0.0
                } else {
                    (self.distances[idx] - lo) / span
                }
            })
            .collect();
        DistanceReport {
            normalized: true,
            distances,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        to_json_string(self).expect("report serialises")
    }

    /// One row per unordered pair.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,encoder,i,j,distance\n");
        for (i, j, d) in self.pairs() {
            out.push_str(&format!(
                "{},{},{i},{j},{}\n",
                self.family,
                self.encoder.name(),
                fmt_f64(d)
            ));
        }
        out
    }
}

fn common_params(graphs: &[Graph]) -> Option<SrgParams> {
    let first = validate_srg(graphs.first()?)?;
    graphs[1..]
        .iter()
        .all(|g| validate_srg(g) == Some(first))
        .then_some(first)
}

/// Encodes every graph (in parallel, results kept in input order) and fills
/// the symmetric distance matrix.
pub fn family_distance_matrix(
    family: &str,
    graphs: &[Graph],
    encoder: &EncoderConfig,
) -> Result<DistanceReport> {
    if let Some(g) = graphs.iter().find(|g| g.n() != graphs[0].n()) {
        return Err(Error::FamilyMismatch(format!(
            "{family}: members have {} and {} nodes",
            graphs[0].n(),
            g.n()
        )));
    }
    let encodings = graphs
        .par_iter()
        .map(|g| encoder.encode::<f64>(g))
        .collect::<Result<Vec<_>>>()?;
    let m = graphs.len();
    let upper = (0..m * m)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / m, idx % m);
            if i < j {
                graph_distance(&encodings[i], &encodings[j])
            } else {
                Ok(0.0)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let distances = (0..m * m)
        .map(|idx| {
            let (i, j) = (idx / m, idx % m);
            upper[i.min(j) * m + i.max(j)]
        })
        .collect();
    Ok(DistanceReport {
        family: family.to_string(),
        params: common_params(graphs),
        encoder: encoder.clone(),
        zero_threshold: ZERO_THRESHOLD,
        normalized: false,
        size: m,
        distances,
    })
}

/// One line of a family verdict table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub expectation: String,
    pub observed: String,
    pub pass: bool,
}

/// Verdict table for one SRG family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: String,
    pub params: SrgParams,
    pub members: usize,
    pub checks: Vec<CheckRow>,
    pub ising: DistanceReport,
    pub xy2: DistanceReport,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        to_json_string(self).expect("report serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,check,expectation,observed,pass\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.family,
                c.check,
                csv_quote(&c.expectation),
                csv_quote(&c.observed),
                c.pass
            ));
        }
        out
    }
}

/// Number of RRWP slices fed to GD-WL in family reports.
const RRWP_STEPS: usize = 8;

/// Validates a same-parameter SRG family and runs the WL, RRWP GD-WL,
/// closed-form Ising and XY checks over all of its pairs.
pub fn srg_family_report(family: &str, graphs: &[Graph]) -> Result<FamilyReport> {
    if graphs.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "{family}: a family report needs at least two graphs"
        )));
    }
    let mut params = None;
    for (i, g) in graphs.iter().enumerate() {
        let p = validate_srg(g).ok_or_else(|| {
            Error::FamilyMismatch(format!("{family}: member {i} is not strongly regular"))
        })?;
        match params {
            None => params = Some(p),
            Some(q) if q != p => {
                return Err(Error::FamilyMismatch(format!(
                    "{family}: member {i} is {p}, expected {q}"
                )))
            }
            Some(_) => {}
        }
    }
    let params = params.expect("at least two members");

    let single = graphs
        .par_iter()
        .map(|g| wl1(g, None).map(|p| p.num_classes() == 1))
        .collect::<Result<Vec<_>>>()?;
    let singles = single.iter().filter(|&&s| s).count();

    let pairs: Vec<(usize, usize)> = (0..graphs.len())
        .flat_map(|i| ((i + 1)..graphs.len()).map(move |j| (i, j)))
        .collect();
    let wl_split = pairs
        .par_iter()
        .map(|&(i, j)| distinguish(&graphs[i], &graphs[j], &Method::Wl1).map(|v| v.distinguished))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|&d| d)
        .count();

    let prints = graphs
        .par_iter()
        .map(|g| gdwl_channels(g, &rrwp::<f64>(g, RRWP_STEPS)?.slices(), DEFAULT_DIGITS))
        .collect::<Result<Vec<_>>>()?;
    let distinct_prints = {
        let mut p = prints.clone();
        p.dedup();
        p.sort_by(|a, b| a.rounds.cmp(&b.rounds));
        p.dedup();
        p.len()
    };

    let ising = family_distance_matrix(family, graphs, &EncoderConfig::default_ising_p1())?;
    let xy2 = family_distance_matrix(family, graphs, &EncoderConfig::default_xy2())?;
    let ising_max = ising.max_off_diagonal().unwrap_or(0.0);
    let xy_min = xy2.min_off_diagonal().unwrap_or(0.0);
    let xy_zero = xy2.pairs().filter(|p| p.2 <= ZERO_THRESHOLD).count();

    let m = graphs.len();
    let checks = vec![
        CheckRow {
            check: "srg_params".into(),
            expectation: format!("all members {params}"),
            observed: format!("{m} members {params}"),
            pass: true,
        },
        CheckRow {
            check: "wl1_single_class".into(),
            expectation: "one colour class per member".into(),
            observed: format!("{singles}/{m}"),
            pass: singles == m,
        },
        CheckRow {
            check: "wl1_pairs".into(),
            expectation: "no pair distinguished".into(),
            observed: format!("{wl_split}/{} distinguished", pairs.len()),
            pass: wl_split == 0,
        },
        CheckRow {
            check: "rrwp_gdwl".into(),
            expectation: "identical fingerprints".into(),
            observed: format!("{distinct_prints} distinct fingerprint(s)"),
            pass: distinct_prints == 1,
        },
        CheckRow {
            check: "ising_p1_zero".into(),
            expectation: format!("max distance <= {}", fmt_f64(ZERO_THRESHOLD)),
            observed: format!("max {}", fmt_f64(ising_max)),
            pass: ising_max <= ZERO_THRESHOLD,
        },
        CheckRow {
            check: "xy2_nonzero".into(),
            expectation: format!("min distance > {}", fmt_f64(ZERO_THRESHOLD)),
            observed: format!("min {}, {xy_zero} pair(s) at zero", fmt_f64(xy_min)),
            pass: xy_zero == 0,
        },
    ];
    Ok(FamilyReport {
        family: family.to_string(),
        params,
        members: m,
        checks,
        ising,
        xy2,
    })
}
