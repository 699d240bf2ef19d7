//! Classical and quantum-inspired positional encodings for graphs.
//!
//! The numeric core is generic over the scalar type through [`Real`]
//! (`f32` or `f64`); the `*64` / `*32` aliases below fix the precision.
//! Experiments and the CLI run in `f64`.

mod correlation;
mod error;
mod scalar;

pub mod fixtures;
pub mod graph;
pub mod groundstate;
pub mod harness;
pub mod isingcf;
pub mod numerics;
pub mod simulator;
pub mod walks;
pub mod wltest;

pub use correlation::CorrelationMatrix;
pub use error::{Error, Result};
pub use graph::{parse_graph6, write_graph6, Graph, SrgParams};
pub use numerics::{Matrix, SpectralDecomp};
pub use scalar::{Complex, Real};

pub type Matrix64 = Matrix<f64>;
pub type Matrix32 = Matrix<f32>;
pub type SpectralDecomp64 = SpectralDecomp<f64>;
pub type SpectralDecomp32 = SpectralDecomp<f32>;
pub type CorrelationMatrix64 = CorrelationMatrix<f64>;
pub type CorrelationMatrix32 = CorrelationMatrix<f32>;
pub type EncodingTensor64 = walks::EncodingTensor<f64>;
pub type EncodingTensor32 = walks::EncodingTensor<f32>;
pub type IsingModel64 = isingcf::IsingModel<f64>;
pub type IsingModel32 = isingcf::IsingModel<f32>;
pub type PulseSchedule64 = isingcf::PulseSchedule<f64>;
pub type State64 = simulator::State<f64>;
pub type State32 = simulator::State<f32>;
