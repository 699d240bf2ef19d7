use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groundstate::{gs_correlation, ising_ground_manifold};
use crate::isingcf::{correlation_closed_form, IsingModel, PulseSchedule};
use crate::numerics::Matrix;
use crate::simulator::correlation_sim;
use crate::walks::{rrwp, xy2_correlations, InitSpec};
use crate::{Graph, Real};

/// Graph → `n × n` encoding used by the family experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "encoder", rename_all = "snake_case")]
pub enum EncoderConfig {
    /// Two-walker XY occupation covariance at time `t`.
    Xy2 { t: f64, init: InitSpec },
    /// One-layer closed form with the uniform model `h ≡ 1`, `J = A`.
    IsingClosedForm { theta: f64, t: f64 },
    /// Simulated covariance after an arbitrary schedule, uniform model.
    IsingSim { schedule: PulseSchedule<f64> },
    /// Ground-state `⟨z_i z_j⟩` of the detuned model.
    GroundState { delta: f64 },
    /// Slice `k` of RRWP, i.e. `(D⁻¹A)^k`.
    RrwpSlice { k: usize },
}

impl EncoderConfig {
    /// Incoherently averaged localized starts at `t = 1`; this is the
    /// configuration that separates same-parameter SRGs.
    pub fn default_xy2() -> Self {
        EncoderConfig::Xy2 {
            t: 1.0,
            init: InitSpec::LocalizedAverage,
        }
    }

    pub fn default_ising_p1() -> Self {
        EncoderConfig::IsingClosedForm {
            theta: std::f64::consts::FRAC_PI_4,
            t: 1.0,
        }
    }

    /// Two symmetric layers at `ϑ = π/4` with times 1 and ½.
    pub fn default_ising_p2() -> Self {
        let q = std::f64::consts::FRAC_PI_4;
        EncoderConfig::IsingSim {
            schedule: PulseSchedule {
                theta: vec![q, q],
                times: vec![1.0, 0.5],
                phi: None,
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EncoderConfig::Xy2 { .. } => "xy2",
            EncoderConfig::IsingClosedForm { .. } => "ising_closed_form",
            EncoderConfig::IsingSim { .. } => "ising_sim",
            EncoderConfig::GroundState { .. } => "ground_state",
            EncoderConfig::RrwpSlice { .. } => "rrwp_slice",
        }
    }

    pub fn encode<T: Real>(&self, g: &Graph) -> Result<Matrix<T>> {
        Ok(match self {
            EncoderConfig::Xy2 { t, init } => xy2_correlations(g, T::of(*t), *init)?.into_matrix(),
            EncoderConfig::IsingClosedForm { theta, t } => {
                correlation_closed_form(g, &IsingModel::uniform(g), T::of(*theta), T::of(*t))?
                    .into_matrix()
            }
            EncoderConfig::IsingSim { schedule } => {
                let schedule = PulseSchedule {
                    theta: schedule.theta.iter().map(|&x| T::of(x)).collect(),
                    times: schedule.times.iter().map(|&x| T::of(x)).collect(),
                    phi: schedule.phi.map(T::of),
                };
                correlation_sim(g, &IsingModel::uniform(g), &schedule)?.into_matrix()
            }
            EncoderConfig::GroundState { delta } => {
                gs_correlation(&ising_ground_manifold(g, *delta)?)?.into_matrix()
            }
            EncoderConfig::RrwpSlice { k } => rrwp::<T>(g, k + 1)?.slice(*k),
        })
    }
}
