//! Entanglement dynamics of spin-1/2 chains rendered as sound.
//!
//! The pipeline runs from [`quantum`] (state preparation, one-axis twisting,
//! kicked rotor, half-chain entropy) through [`phase_space`] (Husimi Q on a
//! spherical grid) and [`sonify`] (amplitude, pan, pitch and timbre per step)
//! to [`dsp`] (synthesis, STFT, WAV). [`oracle`] holds dense reference
//! implementations for cross-checking.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the double-precision variants used by the command-line tool.

// `!(x > 0.0)` style checks are used on purpose so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dsp;
mod error;
pub mod oracle;
pub mod phase_space;
pub mod quantum;
mod scalar;
pub mod sonify;

pub use error::{Error, Result};
pub use scalar::{wrap_angle, Real};

pub type StateVector = quantum::StateVector<f64>;
pub type StateVector32 = quantum::StateVector<f32>;
pub type SphericalAngles = quantum::SphericalAngles<f64>;
pub type ScenarioConfig = quantum::ScenarioConfig<f64>;
pub type ReducedDensityMatrix = quantum::ReducedDensityMatrix<f64>;
pub type SphericalGrid = phase_space::SphericalGrid<f64>;
pub type HusimiFrame = phase_space::HusimiFrame<f64>;
pub type HusimiFrame32 = phase_space::HusimiFrame<f32>;
pub type FrameSummary = phase_space::FrameSummary<f64>;
pub type SonicFrame = sonify::SonicFrame<f64>;
pub type MappingConfig = sonify::MappingConfig<f64>;
pub type AudioConfig = dsp::AudioConfig<f64>;
pub type AudioBuffer = dsp::AudioBuffer<f64>;
pub type AudioBuffer32 = dsp::AudioBuffer<f32>;
pub type Spectrogram = dsp::Spectrogram<f64>;
