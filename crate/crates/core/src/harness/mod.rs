//! Experiment procedures: the sort-flatten graph distance, encoder
//! configurations, family distance matrices, SRG family reports, report
//! emission and the closed-form versus simulator sweep.

mod emit;
mod encoder;
mod oracle;
mod report;

pub use emit::{fmt_f64, to_json_string, FullPrecision};
pub use encoder::EncoderConfig;
pub use oracle::{oracle_sweep, OracleCase, OracleReport, ORACLE_TOL};
pub use report::{
    family_distance_matrix, srg_family_report, CheckRow, DistanceReport, FamilyReport,
};

use crate::error::{Error, Result};
use crate::numerics::Matrix;
use crate::Real;

/// Distances at or below this are treated as zero.
pub const ZERO_THRESHOLD: f64 = 1e-8;

/// All `n²` entries in ascending order.
pub fn sort_flatten<T: Real>(c: &Matrix<T>) -> Vec<T> {
    let mut v = c.as_slice().to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite entries"));
    v
}

/// `½ Σ_k |S(C₁)_k − S(C₂)_k|` over sort-flattened encodings.
pub fn graph_distance<T: Real>(c1: &Matrix<T>, c2: &Matrix<T>) -> Result<T> {
    if c1.rows() != c2.rows() || c1.cols() != c2.cols() {
        return Err(Error::DimensionMismatch {
            expected: c1.rows(),
            found: c2.rows(),
        });
    }
    if !c1.all_finite() || !c2.all_finite() {
        return Err(Error::NonFinite);
    }
    let a = sort_flatten(c1);
    let b = sort_flatten(c2);
    let sum: T = a.iter().zip(&b).map(|(x, y)| (*x - *y).abs()).sum();
    Ok(sum * T::of(0.5))
}
