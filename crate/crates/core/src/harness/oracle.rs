use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::to_json_string;
use crate::error::{Error, Result};
use crate::isingcf::{correlation_closed_form, local_occupation, IsingModel, PulseSchedule};
use crate::numerics::Matrix;
use crate::simulator::{evolve_layers, state_correlation};
use crate::Graph;

/// Largest closed-form versus simulator deviation accepted by the sweep.
pub const ORACLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCase {
    pub index: usize,
    pub n: usize,
    pub edges: usize,
    pub theta: f64,
    pub t: f64,
    pub max_local_dev: f64,
    pub max_corr_dev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub seed: u64,
    pub graphs: usize,
    pub n_max: usize,
    pub tolerance: f64,
    pub max_local_dev: f64,
    pub max_corr_dev: f64,
    pub passed: bool,
    pub cases: Vec<OracleCase>,
}

impl OracleReport {
    pub fn to_json(&self) -> String {
        to_json_string(self).expect("report serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,n,edges,theta,t,max_local_dev,max_corr_dev\n");
        for c in &self.cases {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                c.index,
                c.n,
                c.edges,
                super::fmt_f64(c.theta),
                super::fmt_f64(c.t),
                super::fmt_f64(c.max_local_dev),
                super::fmt_f64(c.max_corr_dev)
            ));
        }
        out
    }
}

struct Instance {
    g: Graph,
    model: IsingModel<f64>,
    theta: f64,
    t: f64,
}

fn draw(rng: &mut impl Rng, n_max: usize) -> Instance {
    let n = if n_max == 1 { 1 } else { rng.gen_range(2..=n_max) };
    let mut edges = Vec::new();
    let mut j = Matrix::zeros(n, n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
                let w = rng.gen_range(0..=2) as f64;
                j[(u, v)] = w;
                j[(v, u)] = w;
            }
        }
    }
    let h = (0..n).map(|_| rng.gen_range(0..=1) as f64).collect();
    let theta = rng.gen_range(1e-3..std::f64::consts::FRAC_PI_2);
    let t = std::f64::consts::TAU * (1.0 - rng.gen::<f64>());
    Instance {
        g: Graph::from_edges(n, edges).expect("edges in range"),
        model: IsingModel::new(h, j).expect("symmetric couplings"),
        theta,
        t,
    }
}

/// Compares the closed forms with the statevector simulator on `graphs`
/// random weighted instances with `n ≤ n_max`. All randomness is drawn up
/// front, so the report depends only on `(seed, graphs, n_max)`.
pub fn oracle_sweep(seed: u64, graphs: usize, n_max: usize) -> Result<OracleReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<Instance> = (0..graphs).map(|_| draw(&mut rng, n_max)).collect();
    let cases = instances
        .par_iter()
        .enumerate()
        .map(|(index, inst)| {
            let sched = PulseSchedule::symmetric(inst.theta, inst.t);
            let state = evolve_layers(&inst.g, &inst.model, &sched)?;
            let sim = state_correlation(&state);
            let local = local_occupation(&inst.g, &inst.model, inst.theta, inst.t)?;
            let closed = correlation_closed_form(&inst.g, &inst.model, inst.theta, inst.t)?;
            let n = inst.g.n();
            let occ = crate::simulator::expect_n;
            let max_local_dev = (0..n)
                .map(|v| occ(&state, v).map(|x| (x - local[v]).abs()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok(OracleCase {
                index,
                n,
                edges: inst.g.edge_count(),
                theta: inst.theta,
                t: inst.t,
                max_local_dev,
                max_corr_dev: closed.max_abs_diff(&sim),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_local_dev = cases.iter().map(|c| c.max_local_dev).fold(0.0, f64::max);
    let max_corr_dev = cases.iter().map(|c| c.max_corr_dev).fold(0.0, f64::max);
    Ok(OracleReport {
        seed,
        graphs,
        n_max,
        tolerance: ORACLE_TOL,
        max_local_dev,
        max_corr_dev,
        passed: max_local_dev <= ORACLE_TOL && max_corr_dev <= ORACLE_TOL,
        cases,
    })
}
