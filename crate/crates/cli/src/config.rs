//! Run configuration: what the flags and the optional JSON config file
//! resolve to. Every field is optional so a config file can overlay the
//! command line field by field.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use qpe_core::walks::InitSpec;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MethodName {
    Rrwp,
    Cqrw1,
    Cqrw2,
    Qirw2,
    Xy2,
    IsingP1,
    IsingSim,
    GsCorr,
    GsPe,
    TimeAvg,
    Wl1,
    SumRefine,
    GdwlRrwp,
    OccupationWl,
    LocalizedSignature,
}

impl MethodName {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodName::Rrwp => "rrwp",
            MethodName::Cqrw1 => "cqrw1",
            MethodName::Cqrw2 => "cqrw2",
            MethodName::Qirw2 => "qirw2",
            MethodName::Xy2 => "xy2",
            MethodName::IsingP1 => "ising-p1",
            MethodName::IsingSim => "ising-sim",
            MethodName::GsCorr => "gs-corr",
            MethodName::GsPe => "gs-pe",
            MethodName::TimeAvg => "time-avg",
            MethodName::Wl1 => "wl1",
            MethodName::SumRefine => "sum-refine",
            MethodName::GdwlRrwp => "gdwl-rrwp",
            MethodName::OccupationWl => "occupation-wl",
            MethodName::LocalizedSignature => "localized-signature",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Time grid for the continuous-time walks.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeSpec {
    /// `t_k = kπ/K`, `k = 1..=K`.
    Grid,
    /// `K` seeded uniform times on `(0.1, π]`.
    Random,
    Explicit(Vec<f64>),
}

impl fmt::Display for TimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeSpec::Grid => f.write_str("grid"),
            TimeSpec::Random => f.write_str("random"),
            TimeSpec::Explicit(ts) => f.write_str(&join_floats(ts)),
        }
    }
}

impl FromStr for TimeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "grid" => Ok(TimeSpec::Grid),
            "random" => Ok(TimeSpec::Random),
            other => parse_floats(other).map(TimeSpec::Explicit),
        }
    }
}

/// Comma-separated floats on the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

impl FromStr for FloatList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_floats(s).map(FloatList)
    }
}

pub fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    let v = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{}` is not a number", x.trim()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if v.iter().any(|x| !x.is_finite()) {
        return Err("values must be finite".into());
    }
    Ok(v)
}

fn join_floats(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

/// Serialises a `Display`/`FromStr` value as its string form.
mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(de::Error::custom))
            .transpose()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodName>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", with = "as_string")]
    pub times: Option<TimeSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "as_string")]
    pub init: Option<InitSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalize: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graphs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident; $($f:ident),*) => {
        RunConfig {
            inputs: if $top.inputs.is_empty() { $base.inputs } else { $top.inputs },
            $($f: $top.$f.or($base.$f),)*
        }
    };
}

impl RunConfig {
    /// Fields set in `top` win.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        let base = self;
        overlay_fields!(base, top; command, method, steps, times, theta, t, layers, delta,
            init, seed, output, format, normalize, family, checks, graphs, n_max)
    }

    pub fn from_json(text: &str) -> Result<RunConfig, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("line {}: {e}", e.line())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(1)
    }

    pub fn theta(&self) -> Vec<f64> {
        self.theta.clone().unwrap_or_else(|| vec![std::f64::consts::FRAC_PI_4])
    }

    pub fn t(&self) -> Vec<f64> {
        self.t.clone().unwrap_or_else(|| vec![1.0])
    }

    pub fn delta(&self) -> f64 {
        self.delta.unwrap_or(qpe_core::groundstate::DEFAULT_DELTA)
    }
}
