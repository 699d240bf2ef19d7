mod commands;
mod config;
mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpe_core::walks::InitSpec;

use config::{FloatList, Format, MethodName, RunConfig, TimeSpec};
use error::CliError;

const AFTER_HELP: &str = "\
Conventions:
  Nodes of degree zero get all-zero rows in D^-1 A and in its two-walker
  analogue, so probability mass that reaches them vanishes.
  Floats are printed with 17 significant digits.

Exit codes:
  0 success, 1 other error, 2 parse error (graph6 input, config file or
  arguments), 3 resource guard, 4 oracle check failed.

Environment:
  QPE_MAX_QUBITS  raises or lowers the statevector simulator's qubit limit
                  (default 24). Larger values are at your own risk.";

#[derive(Parser)]
#[command(name = "qpe", version, about = "Quantum-inspired positional encodings for graphs", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode every graph of the graph6 inputs, one record per graph.
    Encode(Opts),
    /// Decide whether a test tells graphs apart, pair by pair.
    Distinguish(Opts),
    /// Parse graphs and report their size and any SRG parameters.
    Validate(Opts),
    /// Pairwise distances (or the full check table) over a graph family.
    Family(Opts),
    /// Compare closed forms with the statevector simulator on random graphs.
    OracleCheck(Opts),
}

#[derive(Args, Debug)]
struct Opts {
    /// graph6 files, one graph per line (`-` reads stdin).
    inputs: Vec<PathBuf>,
    /// JSON config; fields present there override the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    method: Option<MethodName>,
    /// Step count; the particle number for occupation-wl.
    #[arg(long, short = 'k')]
    steps: Option<usize>,
    /// `grid` (kπ/K), `random` (seeded) or a comma list of times.
    #[arg(long)]
    times: Option<TimeSpec>,
    /// Pulse angle(s), comma separated.
    #[arg(long)]
    theta: Option<FloatList>,
    /// Evolution time(s), comma separated.
    #[arg(long = "t")]
    t: Option<FloatList>,
    /// Number of pulse–Ising–pulse layers.
    #[arg(long)]
    layers: Option<usize>,
    /// Detuning of the ground-state model, 0 < δ < 1.
    #[arg(long)]
    delta: Option<f64>,
    /// localized:i | localized:i,j | uniform_pairs | uniform_edges | localized_average
    #[arg(long)]
    init: Option<InitSpec>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write here instead of stdout.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Min–max scale family distances onto [0, 1].
    #[arg(long)]
    normalize: bool,
    /// Vendored family: rook_shrikhande, srg_25_12_5_6, srg_26_10_3_4 (or `all` for validate).
    #[arg(long)]
    family: Option<String>,
    /// Run the full SRG check table instead of a single distance matrix.
    #[arg(long)]
    checks: bool,
    /// Number of random graphs in the oracle sweep.
    #[arg(long)]
    graphs: Option<usize>,
    /// Largest graph in the oracle sweep.
    #[arg(long)]
    n_max: Option<usize>,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long)]
    print_config: bool,
}

impl Opts {
    fn into_config(self, command: &str) -> Result<(RunConfig, bool), CliError> {
        let print = self.print_config;
        let flags = RunConfig {
            command: Some(command.to_string()),
            inputs: self.inputs,
            method: self.method,
            steps: self.steps,
            times: self.times,
            theta: self.theta.map(|l| l.0),
            t: self.t.map(|l| l.0),
            layers: self.layers,
            delta: self.delta,
            init: self.init,
            seed: self.seed,
            output: self.output,
            format: self.format,
            normalize: self.normalize.then_some(true),
            family: self.family,
            checks: self.checks.then_some(true),
            graphs: self.graphs,
            n_max: self.n_max,
        };
        let Some(path) = self.config else {
            return Ok((flags, print));
        };
        let file = commands::read_config(&path)?;
        if let Some(c) = file.command.as_deref().filter(|&c| c != command) {
            return Err(CliError::Config(format!(
                "{} is for `{c}`, not `{command}`",
                path.display()
            )));
        }
        Ok((flags.overlay(file), print))
    }
}

type Handler = fn(&RunConfig) -> Result<u8, CliError>;

fn run(cli: Cli) -> Result<u8, CliError> {
    let (name, opts, cmd): (&str, Opts, Handler) = match cli.command {
        Command::Encode(o) => ("encode", o, commands::encode),
        Command::Distinguish(o) => ("distinguish", o, commands::distinguish_cmd),
        Command::Validate(o) => ("validate", o, commands::validate),
        Command::Family(o) => ("family", o, commands::family),
        Command::OracleCheck(o) => ("oracle-check", o, commands::oracle_check),
    };
    let (cfg, print) = opts.into_config(name)?;
    if print {
        println!("{}", cfg.to_json());
        return Ok(error::exit::OK);
    }
    cmd(&cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qpe: {e}");
            ExitCode::from(e.code())
        }
    }
}
