use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use qpe_core::fixtures::Family;
use qpe_core::groundstate::{gs_correlation, gs_positional_encoding, ising_ground_manifold};
use qpe_core::harness::{
    family_distance_matrix, fmt_f64, graph_distance, oracle_sweep, srg_family_report, to_json_string,
    EncoderConfig, ZERO_THRESHOLD,
};
use qpe_core::isingcf::{correlation_closed_form, IsingModel, PulseSchedule};
use qpe_core::simulator::{correlation_sim, max_qubits};
use qpe_core::walks::{
    cqrw1, cqrw2, default_times, qirw2, random_times, rrwp, time_avg_transition, xy2_correlations,
    EncodingTensor, InitSpec,
};
use qpe_core::wltest::{distinguish, Method, Verdict, Witness};
use qpe_core::{graph::validate_srg, write_graph6, Graph, Matrix, SrgParams};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, MethodName, RunConfig, TimeSpec};
use crate::error::{exit, CliError, Status};
use crate::input::{read_all, GraphReader, Record};

/// Default number of walk steps / time slices.
const DEFAULT_STEPS: usize = 8;
/// Graphs encoded concurrently before their records are written in order.
const BATCH: usize = 64;

fn sink(cfg: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cfg.output {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            context: "output".into(),
            source,
        })
}

fn finish(mut out: Box<dyn Write>) -> Result<(), CliError> {
    out.flush().map_err(|source| CliError::Io {
        context: "output".into(),
        source,
    })
}

fn json<S: Serialize>(v: &S) -> String {
    to_json_string(v).expect("records serialise")
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn steps(cfg: &RunConfig) -> usize {
    cfg.steps.unwrap_or(DEFAULT_STEPS)
}

fn times(cfg: &RunConfig) -> Vec<f64> {
    match cfg.times.clone().unwrap_or(TimeSpec::Grid) {
        TimeSpec::Grid => default_times(steps(cfg)),
        TimeSpec::Random => random_times(steps(cfg), cfg.seed()),
        TimeSpec::Explicit(ts) => ts,
    }
}

fn single(name: &str, v: Vec<f64>) -> Result<f64, CliError> {
    match v[..] {
        [x] => Ok(x),
        _ => Err(CliError::Usage(format!("--{name} takes a single value for this method"))),
    }
}

/// Layer angles and times; single values are repeated over `--layers`.
fn schedule(cfg: &RunConfig) -> Result<PulseSchedule<f64>, CliError> {
    let (theta, t) = (cfg.theta(), cfg.t());
    let p = cfg.layers.unwrap_or(t.len());
    let spread = |v: Vec<f64>, len: usize| if v.len() == 1 { vec![v[0]; len] } else { v };
    let sched = PulseSchedule {
        theta: spread(theta, p),
        times: spread(t, p),
        phi: None,
    };
    sched.validate()?;
    Ok(sched)
}

fn encoder_config(cfg: &RunConfig, method: MethodName) -> Result<EncoderConfig, CliError> {
    Ok(match method {
        MethodName::Xy2 => EncoderConfig::Xy2 {
            t: single("t", cfg.t())?,
            init: cfg.init.unwrap_or(InitSpec::LocalizedAverage),
        },
        MethodName::IsingP1 => EncoderConfig::IsingClosedForm {
            theta: single("theta", cfg.theta())?,
            t: single("t", cfg.t())?,
        },
        MethodName::IsingSim => EncoderConfig::IsingSim {
            schedule: schedule(cfg)?,
        },
        MethodName::GsCorr => EncoderConfig::GroundState { delta: cfg.delta() },
        MethodName::Rrwp => EncoderConfig::RrwpSlice {
            k: cfg.steps.unwrap_or(1),
        },
        other => {
            return Err(CliError::Usage(format!(
                "method {} does not produce a single n×n encoding",
                other.as_str()
            )))
        }
    })
}

#[derive(Serialize)]
struct Encoded<'a> {
    index: usize,
    source: &'a str,
    line: usize,
    method: &'static str,
    n: usize,
    shape: Vec<usize>,
    values: Vec<f64>,
}

fn tensor(t: EncodingTensor<f64>) -> (Vec<usize>, Vec<f64>) {
    (vec![t.steps(), t.n(), t.n()], t.values().to_vec())
}

fn matrices(ms: Vec<Matrix<f64>>) -> (Vec<usize>, Vec<f64>) {
    let (r, c) = ms.first().map_or((0, 0), |m| (m.rows(), m.cols()));
    let mut shape = vec![ms.len(), r, c];
    if ms.len() == 1 && r != c {
        shape.remove(0);
    }
    (shape, ms.into_iter().flat_map(Matrix::into_vec).collect())
}

fn encode_graph(cfg: &RunConfig, method: MethodName, g: &Graph) -> Result<(Vec<usize>, Vec<f64>), CliError> {
    let init = |fallback| cfg.init.unwrap_or(fallback);
    Ok(match method {
        MethodName::Rrwp => tensor(rrwp(g, steps(cfg))?),
        MethodName::Cqrw1 => tensor(cqrw1(g, &times(cfg))?),
        MethodName::Cqrw2 => tensor(cqrw2(g, &times(cfg), init(InitSpec::UniformEdges))?),
        MethodName::Qirw2 => tensor(qirw2(g, steps(cfg), init(InitSpec::UniformEdges))?),
        MethodName::Xy2 => matrices(
            cfg.t()
                .into_iter()
                .map(|t| Ok(xy2_correlations(g, t, init(InitSpec::LocalizedAverage))?.into_matrix()))
                .collect::<Result<_, CliError>>()?,
        ),
        MethodName::IsingP1 => {
            let (theta, ts) = (cfg.theta(), cfg.t());
            if theta.len() != 1 && theta.len() != ts.len() {
                return Err(CliError::Usage("--theta needs one value or one per --t value".into()));
            }
            let model = IsingModel::uniform(g);
            matrices(
                ts.iter()
                    .enumerate()
                    .map(|(i, &t)| {
                        let th = theta[if theta.len() == 1 { 0 } else { i }];
                        Ok(correlation_closed_form(g, &model, th, t)?.into_matrix())
                    })
                    .collect::<Result<_, CliError>>()?,
            )
        }
        MethodName::IsingSim => {
            matrices(vec![correlation_sim(g, &IsingModel::uniform(g), &schedule(cfg)?)?.into_matrix()])
        }
        MethodName::GsCorr => matrices(vec![
            gs_correlation::<f64>(&ising_ground_manifold(g, cfg.delta())?)?.into_matrix(),
        ]),
        MethodName::GsPe => {
            let c = gs_correlation::<f64>(&ising_ground_manifold(g, cfg.delta())?)?;
            let m = cfg.steps.unwrap_or(g.n().min(DEFAULT_STEPS));
            matrices(vec![gs_positional_encoding(&c, m)?])
        }
        MethodName::TimeAvg => matrices(vec![time_avg_transition(g)?]),
        other => {
            return Err(CliError::Usage(format!(
                "{} is a distinguishability test, not an encoder",
                other.as_str()
            )))
        }
    })
}

fn encoded_csv(e: &Encoded) -> String {
    let (slices, rows, cols) = match e.shape[..] {
        [s, r, c] => (s, r, c),
        [r, c] => (1, r, c),
        _ => (0, 0, 0),
    };
    let mut out = String::new();
    for s in 0..slices {
        for r in 0..rows {
            for c in 0..cols {
                let v = e.values[(s * rows + r) * cols + c];
                out.push_str(&format!("{},{},{s},{r},{c},{}\n", e.index, e.method, fmt_f64(v)));
            }
        }
    }
    out
}

/// Streams graphs from the inputs and writes one record per graph.
pub fn encode(cfg: &RunConfig) -> Result<u8, CliError> {
    let method = cfg.method.unwrap_or(MethodName::Rrwp);
    if cfg.inputs.is_empty() {
        return Err(CliError::Usage("encode needs at least one graph6 input".into()));
    }
    let format = cfg.format();
    let mut out = sink(cfg)?;
    if format == Format::Csv {
        write_out(&mut *out, "graph,method,slice,row,col,value\n")?;
    }
    let mut status = Status::default();
    let mut reader = GraphReader::new(cfg.inputs.clone()).peekable();
    while reader.peek().is_some() {
        let mut batch: Vec<Record> = Vec::with_capacity(BATCH);
        for item in reader.by_ref().take(BATCH) {
            match item {
                Ok(rec) => batch.push(rec),
                Err(e) => status.record(&e),
            }
        }
        let rendered: Vec<Result<String, CliError>> = batch
            .par_iter()
            .map(|rec| {
                let g = rec.graph.as_ref().map_err(|e| CliError::Usage(e.to_string()))?;
                let (shape, values) = encode_graph(cfg, method, g).map_err(|e| match e {
                    CliError::Core(inner) => CliError::AtLine {
                        path: rec.source.clone(),
                        line: rec.line,
                        source: inner,
                    },
                    other => other,
                })?;
                let e = Encoded {
                    index: rec.index,
                    source: &rec.source,
                    line: rec.line,
                    method: method.as_str(),
                    n: g.n(),
                    shape,
                    values,
                };
                Ok(match format {
                    Format::Json => json(&e) + "\n",
                    Format::Csv => encoded_csv(&e),
                })
            })
            .collect();
        for (rec, r) in batch.iter().zip(rendered) {
            match (&rec.graph, r) {
                (Err(parse), _) => status.record(parse),
                (Ok(_), Ok(text)) => write_out(&mut *out, &text)?,
                (Ok(_), Err(e)) => {
                    if matches!(e, CliError::Usage(_)) {
                        return Err(e);
                    }
                    status.record(&e)
                }
            }
        }
    }
    finish(out)?;
    Ok(status.code())
}

fn wl_method(cfg: &RunConfig, method: MethodName) -> Option<Method> {
    Some(match method {
        MethodName::Wl1 => Method::Wl1,
        MethodName::SumRefine => Method::SumRefine,
        MethodName::GdwlRrwp => Method::GdwlRrwp { steps: steps(cfg) },
        MethodName::OccupationWl => Method::OccupationWl {
            k: cfg.steps.unwrap_or(2),
        },
        MethodName::LocalizedSignature => Method::LocalizedSignature,
        _ => return None,
    })
}

/// Graphs named by `--family` (vendored) followed by those in the inputs.
fn load(cfg: &RunConfig) -> Result<(String, Vec<Graph>), CliError> {
    let mut graphs = Vec::new();
    let mut name = None;
    if let Some(f) = &cfg.family {
        let fam: Family = f.parse()?;
        graphs.extend(fam.graphs()?);
        name = Some(fam.name().to_string());
    }
    graphs.extend(read_all(cfg.inputs.clone())?);
    let name = name.unwrap_or_else(|| match &cfg.inputs[..] {
        [p] => Path::new(p)
            .file_stem()
            .map_or("input".into(), |s| s.to_string_lossy().into_owned()),
        _ => "input".into(),
    });
    Ok((name, graphs))
}

#[derive(Serialize)]
struct PairVerdict {
    i: usize,
    j: usize,
    distinguished: bool,
    witness: Witness,
}

#[derive(Serialize)]
struct DistinguishReport {
    method: Method,
    graphs: usize,
    pairs: Vec<PairVerdict>,
}

/// Pairwise verdicts for two graphs or every pair of a family.
pub fn distinguish_cmd(cfg: &RunConfig) -> Result<u8, CliError> {
    let name = cfg.method.unwrap_or(MethodName::Wl1);
    let (_, graphs) = load(cfg)?;
    if graphs.len() < 2 {
        return Err(CliError::Usage(format!(
            "distinguish needs two graphs or a family, got {}",
            graphs.len()
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..graphs.len())
        .flat_map(|i| ((i + 1)..graphs.len()).map(move |j| (i, j)))
        .collect();
    let (method, verdicts) = match wl_method(cfg, name) {
        Some(m) => {
            let vs = pairs
                .par_iter()
                .map(|&(i, j)| distinguish(&graphs[i], &graphs[j], &m))
                .collect::<Result<Vec<Verdict>, _>>()?;
            (m, vs.into_iter().map(|v| (v.distinguished, v.witness)).collect::<Vec<_>>())
        }
        None => {
            let encoder = encoder_config(cfg, name)?;
            let encodings = graphs
                .par_iter()
                .map(|g| encoder.encode::<f64>(g))
                .collect::<Result<Vec<_>, _>>()?;
            let vs = pairs
                .par_iter()
                .map(|&(i, j)| {
                    if graphs[i].n() != graphs[j].n() {
                        return Ok((true, Witness::NodeCount {
                            left: graphs[i].n(),
                            right: graphs[j].n(),
                        }));
                    }
                    let value = graph_distance(&encodings[i], &encodings[j])?;
                    Ok((value > ZERO_THRESHOLD, Witness::Distance {
                        value,
                        threshold: ZERO_THRESHOLD,
                    }))
                })
                .collect::<Result<Vec<_>, qpe_core::Error>>()?;
            (Method::Distance { encoder }, vs)
        }
    };
    let report = DistinguishReport {
        method,
        graphs: graphs.len(),
        pairs: pairs
            .iter()
            .zip(verdicts)
            .map(|(&(i, j), (distinguished, witness))| PairVerdict {
                i,
                j,
                distinguished,
                witness,
            })
            .collect(),
    };
    let mut out = sink(cfg)?;
    match cfg.format() {
        Format::Json => write_out(&mut *out, &(json(&report) + "\n"))?,
        Format::Csv => {
            let mut text = String::from("i,j,distinguished,witness\n");
            for p in &report.pairs {
                text.push_str(&format!("{},{},{},{}\n", p.i, p.j, p.distinguished, csv_quote(&json(&p.witness))));
            }
            write_out(&mut *out, &text)?;
        }
    }
    finish(out)?;
    Ok(exit::OK)
}

#[derive(Serialize)]
struct Validated {
    index: usize,
    source: String,
    line: usize,
    n: usize,
    edges: usize,
    regular: bool,
    srg: Option<SrgParams>,
    graph6: String,
}

impl Validated {
    fn new(index: usize, source: &str, line: usize, g: &Graph) -> Self {
        Validated {
            index,
            source: source.to_string(),
            line,
            n: g.n(),
            edges: g.edge_count(),
            regular: g.is_regular(),
            srg: validate_srg(g),
            graph6: write_graph6(g),
        }
    }

    fn csv_row(&self) -> String {
        let srg = self.srg.map_or(String::new(), |p| p.to_string());
        format!(
            "{},{},{},{},{},{},{},{}\n",
            self.index,
            csv_quote(&self.source),
            self.line,
            self.n,
            self.edges,
            self.regular,
            csv_quote(&srg),
            csv_quote(&self.graph6)
        )
    }
}

/// Parses every graph and reports basic structure. `--family` (or no inputs
/// at all) also checks the vendored fixtures against their checksums.
pub fn validate(cfg: &RunConfig) -> Result<u8, CliError> {
    let mut status = Status::default();
    let mut out = sink(cfg)?;
    let format = cfg.format();
    if format == Format::Csv {
        write_out(&mut *out, "index,source,line,n,edges,regular,srg,graph6\n")?;
    }
    let emit = |out: &mut dyn Write, v: Validated| -> Result<(), CliError> {
        match format {
            Format::Json => write_out(out, &(json(&v) + "\n")),
            Format::Csv => write_out(out, &v.csv_row()),
        }
    };
    let families: Vec<Family> = match (&cfg.family, cfg.inputs.is_empty()) {
        (Some(f), _) if f == "all" => Family::ALL.to_vec(),
        (Some(f), _) => vec![f.parse()?],
        (None, true) => Family::ALL.to_vec(),
        (None, false) => vec![],
    };
    let mut index = 0;
    for fam in families {
        match fam.graphs() {
            Ok(gs) => {
                for (line, g) in gs.iter().enumerate() {
                    emit(&mut *out, Validated::new(index, fam.name(), line + 1, g))?;
                    index += 1;
                }
            }
            Err(e) => status.record(&e.into()),
        }
    }
    for item in GraphReader::new(cfg.inputs.clone()) {
        match item.and_then(|rec| rec.graph.map(|g| (rec.source, rec.line, g))) {
            Err(e) => status.record(&e),
            Ok((source, line, g)) => {
                emit(&mut *out, Validated::new(index, &source, line, &g))?;
                index += 1;
            }
        }
    }
    finish(out)?;
    Ok(status.code())
}

/// Distance matrix (or the full verdict table with `--checks`) for one family.
pub fn family(cfg: &RunConfig) -> Result<u8, CliError> {
    if cfg.family.is_none() && cfg.inputs.is_empty() {
        return Err(CliError::Usage("family needs --family NAME or a graph6 file".into()));
    }
    let (name, graphs) = load(cfg)?;
    let mut out = sink(cfg)?;
    if cfg.checks.unwrap_or(false) {
        let report = srg_family_report(&name, &graphs)?;
        let text = match cfg.format() {
            Format::Json => report.to_json() + "\n",
            Format::Csv => report.to_csv(),
        };
        write_out(&mut *out, &text)?;
        finish(out)?;
        return Ok(if report.all_pass() { exit::OK } else { exit::OTHER });
    }
    let encoder = encoder_config(cfg, cfg.method.unwrap_or(MethodName::Xy2))?;
    let mut report = family_distance_matrix(&name, &graphs, &encoder)?;
    if cfg.normalize.unwrap_or(false) {
        report = report.normalized();
    }
    let text = match cfg.format() {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    write_out(&mut *out, &text)?;
    finish(out)?;
    Ok(exit::OK)
}

/// Randomised closed-form versus statevector sweep.
pub fn oracle_check(cfg: &RunConfig) -> Result<u8, CliError> {
    let n_max = cfg.n_max.unwrap_or(10);
    let limit = max_qubits();
    if n_max > limit {
        return Err(qpe_core::Error::ResourceLimit {
            what: "simulator qubits",
            requested: n_max,
            limit,
        }
        .into());
    }
    let report = oracle_sweep(cfg.seed(), cfg.graphs.unwrap_or(20), n_max)?;
    let mut out = sink(cfg)?;
    let text = match cfg.format() {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    write_out(&mut *out, &text)?;
    finish(out)?;
    if report.passed {
        Ok(exit::OK)
    } else {
        Err(CliError::OracleFailed(report.max_local_dev.max(report.max_corr_dev)))
    }
}

pub fn read_config(path: &PathBuf) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    RunConfig::from_json(&text)
}
