//! Property checks reused by the property suite and the acceptance run. Each
//! returns a description of the first violation it finds.

use qpe_core::groundstate::{gs_correlation, ising_ground_manifold, DEFAULT_DELTA};
use qpe_core::harness::{graph_distance, EncoderConfig};
use qpe_core::isingcf::{correlation_closed_form, IsingModel, PulseSchedule};
use qpe_core::numerics::{sym_eig, Propagator};
use qpe_core::simulator::{correlation_sim, evolve_layers, xy_subspace_evolve};
use qpe_core::walks::{
    cqrw1, cqrw2, default_times, localized_signature, occupation_graph, qirw2, rrwp,
    time_avg_transition, xy2_correlations, InitSpec,
};
use qpe_core::{parse_graph6, write_graph6, Complex, Graph, Matrix};

use super::max_abs_diff;

pub type Check = Result<(), String>;

const TOL: f64 = 1e-9;

fn same(label: &str, a: &Matrix<f64>, b: &Matrix<f64>) -> Check {
    let d = max_abs_diff(a, b);
    if d < TOL {
        Ok(())
    } else {
        Err(format!("{label}: deviation {d:e}"))
    }
}

fn lib<T>(label: &str, r: qpe_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{label}: {e}"))
}

/// `encode(π·G) == π·encode(G)` for every encoder that applies to `g`.
pub fn equivariance(g: &Graph, perm: &[usize]) -> Check {
    let pg = lib("permute", g.permute(perm))?;
    let n = g.n();
    let times = default_times::<f64>(3);

    let (a, b) = (lib("rrwp", rrwp::<f64>(g, 4))?, lib("rrwp", rrwp::<f64>(&pg, 4))?);
    for k in 0..4 {
        same("rrwp", &b.slice(k), &a.slice(k).permuted(perm))?;
    }
    let (a, b) = (lib("cqrw1", cqrw1(g, &times))?, lib("cqrw1", cqrw1(&pg, &times))?);
    for k in 0..times.len() {
        same("cqrw1", &b.slice(k), &a.slice(k).permuted(perm))?;
    }
    same(
        "time_avg_transition",
        &lib("tat", time_avg_transition::<f64>(&pg))?,
        &lib("tat", time_avg_transition::<f64>(g))?.permuted(perm),
    )?;
    let (sa, sb) = (lib("sig", localized_signature::<f64>(g))?, lib("sig", localized_signature::<f64>(&pg))?);
    for v in 0..n {
        let dev = sa[v].iter().zip(&sb[perm[v]]).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        if dev >= TOL {
            return Err(format!("localized_signature: node {v} deviates by {dev:e}"));
        }
    }

    let model = IsingModel::<f64>::uniform(g);
    let pmodel = IsingModel::<f64>::uniform(&pg);
    same(
        "ising closed form",
        &*lib("cf", correlation_closed_form(&pg, &pmodel, 0.7, 1.3))?,
        &lib("cf", correlation_closed_form(g, &model, 0.7, 1.3))?.permuted(perm),
    )?;
    if n <= 10 {
        let sched = PulseSchedule {
            theta: vec![0.4, 0.9],
            times: vec![1.1, 0.6],
            phi: None,
        };
        same(
            "ising simulator",
            &*lib("sim", correlation_sim(&pg, &pmodel, &sched))?,
            &lib("sim", correlation_sim(g, &model, &sched))?.permuted(perm),
        )?;
    }
    if n <= 16 {
        let m = lib("gs", ising_ground_manifold(g, DEFAULT_DELTA))?;
        let pm = lib("gs", ising_ground_manifold(&pg, DEFAULT_DELTA))?;
        if pm.configs != lib("gs", m.permuted(perm))?.configs {
            return Err("ground manifold not equivariant".into());
        }
        same(
            "gs_correlation",
            &*lib("gs", gs_correlation::<f64>(&pm))?,
            &lib("gs", gs_correlation::<f64>(&m))?.permuted(perm),
        )?;
    }

    if n >= 2 {
        let mut inits = vec![InitSpec::UniformPairs, InitSpec::LocalizedAverage];
        if g.edge_count() > 0 {
            inits.push(InitSpec::UniformEdges);
        }
        for init in inits {
            let (a, b) = (lib("cqrw2", cqrw2(g, &times, init))?, lib("cqrw2", cqrw2(&pg, &times, init))?);
            for k in 0..times.len() {
                same("cqrw2", &b.slice(k), &a.slice(k).permuted(perm))?;
            }
            let (a, b) = (lib("qirw2", qirw2::<f64>(g, 3, init))?, lib("qirw2", qirw2::<f64>(&pg, 3, init))?);
            for k in 0..3 {
                same("qirw2", &b.slice(k), &a.slice(k).permuted(perm))?;
            }
            same(
                "xy2",
                &*lib("xy2", xy2_correlations(&pg, 0.8, init))?,
                &lib("xy2", xy2_correlations(g, 0.8, init))?.permuted(perm),
            )?;
        }
        let (i, j) = (0, n - 1);
        let a = lib("cqrw2", cqrw2(g, &times, InitSpec::Localized(i, j)))?;
        let b = lib("cqrw2", cqrw2(&pg, &times, InitSpec::Localized(perm[i], perm[j])))?;
        for k in 0..times.len() {
            same("cqrw2 localized", &b.slice(k), &a.slice(k).permuted(perm))?;
        }
    }
    Ok(())
}

fn norm2(v: &[Complex<f64>]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `U U† = I` for the single-walker propagator; norm conservation for the
/// two-walker and statevector evolutions.
pub fn unitarity(g: &Graph, t: f64) -> Check {
    let n = g.n();
    let d = lib("eig", sym_eig(&g.adjacency::<f64>()))?;
    let u = Propagator::new(&d, t);
    for i in 0..n {
        for j in 0..n {
            let z: Complex<f64> = (0..n).map(|k| u.entry(i, k) * u.entry(j, k).conj()).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            if (z - Complex::new(want, 0.0)).norm() > 1e-10 {
                return Err(format!("U U† entry ({i}, {j}) = {z}"));
            }
        }
    }
    if n >= 2 {
        let dim = lib("occ", occupation_graph(g, 2))?.len();
        let init: Vec<Complex<f64>> = (0..dim)
            .map(|b| Complex::new((b as f64 + 1.0).sin(), (b as f64).cos()))
            .collect();
        let before = norm2(&init);
        let after = norm2(&lib("xy", xy_subspace_evolve(g, 2, &init, t))?);
        if (before - after).abs() > 1e-10 * before {
            return Err(format!("two-walker norm {before} -> {after}"));
        }
    }
    if n <= 10 {
        let sched = PulseSchedule::symmetric(0.6, t);
        let s = lib("sim", evolve_layers(g, &IsingModel::<f64>::uniform(g), &sched))?;
        if (s.norm() - 1.0).abs() > 1e-12 {
            return Err(format!("statevector norm {}", s.norm()));
        }
    }
    Ok(())
}

fn sums_to(label: &str, values: impl Iterator<Item = f64>, want: f64) -> Check {
    let s: f64 = values.sum();
    if (s - want).abs() < 1e-10 {
        Ok(())
    } else {
        Err(format!("{label}: total {s}, expected {want}"))
    }
}

/// Transition rows sum to one, two-walker pair probabilities to one.
pub fn probability_conservation(g: &Graph) -> Check {
    let n = g.n();
    let times = default_times::<f64>(3);
    let walk = lib("rrwp", rrwp::<f64>(g, 4))?;
    let c1 = lib("cqrw1", cqrw1(g, &times))?;
    let tat = lib("tat", time_avg_transition::<f64>(g))?;
    for v in 0..n {
        if g.degree(v) > 0 {
            for k in 0..4 {
                sums_to("rrwp row", walk.slice(k).row(v).iter().copied(), 1.0)?;
            }
        }
        for k in 0..times.len() {
            sums_to("cqrw1 row", c1.slice(k).row(v).iter().copied(), 1.0)?;
            sums_to("cqrw1 column", c1.slice(k).column(v).into_iter(), 1.0)?;
        }
        sums_to("time-averaged row", tat.row(v).iter().copied(), 1.0)?;
    }
    if n >= 2 {
        let c2 = lib("cqrw2", cqrw2(g, &times, InitSpec::UniformPairs))?;
        for k in 0..times.len() {
            let s = c2.slice(k);
            sums_to("cqrw2 pairs", (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).map(|(i, j)| s[(i, j)]), 1.0)?;
        }
        let q = lib("qirw2", qirw2::<f64>(g, 1, InitSpec::LocalizedAverage))?;
        let s = q.slice(0);
        sums_to("qirw2 start", (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).map(|(i, j)| s[(i, j)]), 1.0)?;
    }
    if n <= 10 {
        let s = lib("sim", evolve_layers(g, &IsingModel::<f64>::uniform(g), &PulseSchedule::symmetric(0.3, 2.0)))?;
        sums_to("statevector", s.amplitudes().iter().map(|a| a.norm_sqr()), 1.0)?;
    }
    Ok(())
}

/// Metric axioms (minus separation) on three encodings, plus invariance
/// under relabeling.
pub fn pseudometric(a: &Matrix<f64>, b: &Matrix<f64>, c: &Matrix<f64>, perm: &[usize]) -> Check {
    let d = |x: &Matrix<f64>, y: &Matrix<f64>| lib("distance", graph_distance(x, y));
    let (ab, ba, bc, ac) = (d(a, b)?, d(b, a)?, d(b, c)?, d(a, c)?);
    if d(a, a)? != 0.0 {
        return Err("d(a, a) != 0".into());
    }
    if ab < 0.0 || bc < 0.0 || ac < 0.0 {
        return Err("negative distance".into());
    }
    if ab != ba {
        return Err(format!("asymmetric: {ab} vs {ba}"));
    }
    if ac > ab + bc + 1e-12 {
        return Err(format!("triangle: {ac} > {ab} + {bc}"));
    }
    if d(a, &a.permuted(perm))? > 1e-15 {
        return Err("not relabeling invariant".into());
    }
    let want = super::sorted_distance(a.as_slice(), b.as_slice());
    if (ab - want).abs() > 1e-12 {
        return Err(format!("distance {ab} vs reference {want}"));
    }
    Ok(())
}

pub fn graph6_round_trip(g: &Graph) -> Check {
    let text = write_graph6(g);
    let back = lib("parse", parse_graph6(&text))?;
    if &back != g {
        return Err(format!("round trip changed graph on {} nodes ({text})", g.n()));
    }
    if write_graph6(&back) != text {
        return Err("re-encoding differs".into());
    }
    Ok(())
}

/// Encodings used for the pseudometric suite.
pub fn sample_encoders() -> Vec<EncoderConfig> {
    vec![
        EncoderConfig::default_ising_p1(),
        EncoderConfig::RrwpSlice { k: 2 },
        EncoderConfig::Xy2 { t: 0.9, init: InitSpec::UniformPairs },
    ]
}
