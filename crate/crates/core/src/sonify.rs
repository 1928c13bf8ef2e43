//! Per-step mapping from phase-space summary and entropy to synthesis
//! parameters.

use crate::error::{Error, Result};
use crate::phase_space::FrameSummary;
use crate::scalar::{wrap_angle, Real};

/// Complex branch blended in as entanglement grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Waveshape {
    Triangle,
    RingMod,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MappingConfig<T = f64> {
    /// Pitch when the peak sits at `theta_init`.
    pub f_init: T,
    /// Polar angle of the prepared state.
    pub theta_init: T,
    pub f_min: T,
    pub waveshape: Waveshape,
    /// Ring-modulation carrier frequency as a multiple of the pitch.
    pub ring_ratio: T,
    /// Entropy (bits) mapped to a fully complex waveform.
    pub entropy_max: T,
}

impl<T: Real> MappingConfig<T> {
    /// Defaults for a chain of `num_spins` prepared at polar angle `theta_init`.
    pub fn for_chain(num_spins: usize, theta_init: T) -> Self {
        Self {
            f_init: T::lit(440.0),
            theta_init,
            f_min: T::lit(20.0),
            waveshape: Waveshape::Triangle,
            ring_ratio: T::lit(2.5),
            entropy_max: T::from_usize_lossy(num_spins) * T::lit(0.5),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.f_min > T::zero() && self.f_min < self.f_init) {
            return Err(Error::Input(format!(
                "need 0 < f_min < f_init, got f_min={} f_init={}",
                self.f_min, self.f_init
            )));
        }
        if !(self.ring_ratio > T::zero()) {
            return Err(Error::Input(format!("ring_ratio must be positive, got {}", self.ring_ratio)));
        }
        if !(self.entropy_max > T::zero()) {
            return Err(Error::Input(format!("entropy_max must be positive, got {}", self.entropy_max)));
        }
        Ok(())
    }
}

/// Synthesis parameters for one simulation step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SonicFrame<T = f64> {
    pub amplitude: T,
    /// -1 is hard left, +1 hard right.
    pub pan: T,
    pub frequency: T,
    /// 0 is a pure sine, 1 the fully complex waveform.
    pub timbre_mix: T,
    pub step_index: usize,
}

pub fn map_amplitude<T: Real>(summary: &FrameSummary<T>) -> T {
    summary.peak_value.max(T::zero()).min(T::one())
}

/// `|φ|` folded into `[0, π]`, mapped linearly: φ = 0 is left, φ = π right.
pub fn map_pan<T: Real>(summary: &FrameSummary<T>) -> T {
    let x = wrap_angle(summary.peak.phi).abs();
    (T::lit(2.0) * x / T::PI() - T::one()).max(-T::one()).min(T::one())
}

/// `f_init - |θ - θ_init|·f_init·spread`, clamped to `[f_min, f_init]`.
pub fn map_pitch<T: Real>(summary: &FrameSummary<T>, cfg: &MappingConfig<T>) -> T {
    let shift = (summary.peak.theta - cfg.theta_init).abs() * cfg.f_init * summary.spread;
    (cfg.f_init - shift).max(cfg.f_min).min(cfg.f_init)
}

pub fn map_timbre<T: Real>(entropy_bits: T, cfg: &MappingConfig<T>) -> T {
    (entropy_bits / cfg.entropy_max).max(T::zero()).min(T::one())
}

/// Applies the four mappings step by step.
pub fn build_timeline<T: Real>(
    summaries: &[FrameSummary<T>],
    entropies: &[T],
    cfg: &MappingConfig<T>,
) -> Result<Vec<SonicFrame<T>>> {
    if summaries.len() != entropies.len() {
        return Err(Error::Input(format!(
            "{} frame summaries but {} entropy values",
            summaries.len(),
            entropies.len()
        )));
    }
    Ok(summaries
        .iter()
        .zip(entropies)
        .enumerate()
        .map(|(k, (s, &e))| SonicFrame {
            amplitude: map_amplitude(s),
            pan: map_pan(s),
            frequency: map_pitch(s, cfg),
            timbre_mix: map_timbre(e, cfg),
            step_index: k,
        })
        .collect())
}

/// Header of the timeline CSV export.
pub const TIMELINE_CSV_HEADER: &str = "step,amplitude,pan,frequency_hz,timbre_mix";

pub fn write_timeline_csv<T: Real, W: std::io::Write>(
    frames: &[SonicFrame<T>],
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "{TIMELINE_CSV_HEADER}")?;
    for f in frames {
        writeln!(out, "{},{},{},{},{}", f.step_index, f.amplitude, f.pan, f.frequency, f.timbre_mix)?;
    }
    Ok(())
}
