//! Closed-form observables of the one-layer pulse / Ising / inverse-pulse
//! state, and the two-valued structure they take on strongly regular graphs.

mod closed;
mod model;

pub use closed::{
    correlation_closed_form, local_occupation, pair_occupation, srg_two_value_decompose,
    total_occupation_density, total_occupation_generic_pulse, TWO_VALUE_TOL,
};
pub use model::{IsingModel, PulseSchedule};
