use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sonify::{MappingConfig, SonicFrame, Waveshape};

use super::osc::{oscillator_sample, Oscillator};

/// Linear peak level the master stage normalizes to (-1 dBFS).
pub const MASTER_PEAK: f64 = 0.891_250_938_133_745_5;

#[derive(Debug, Clone, PartialEq)]
pub struct AudioConfig<T = f64> {
    pub sample_rate: u32,
    /// Time between consecutive timeline frames.
    pub seconds_per_step: T,
}

impl<T: Real> Default for AudioConfig<T> {
    fn default() -> Self {
        Self { sample_rate: 44_100, seconds_per_step: T::lit(0.05) }
    }
}

impl<T: Real> AudioConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.sample_rate < 8000 {
            return Err(Error::Input(format!(
                "sample rate must be at least 8000 Hz, got {}",
                self.sample_rate
            )));
        }
        if !(self.seconds_per_step > T::zero()) || !self.seconds_per_step.is_finite() {
            return Err(Error::Input(format!(
                "seconds per step must be positive, got {}",
                self.seconds_per_step
            )));
        }
        Ok(())
    }
}

/// Two equal-length channels.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer<T = f64> {
    pub left: Vec<T>,
    pub right: Vec<T>,
    pub sample_rate: u32,
}

impl<T: Real> AudioBuffer<T> {
    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn duration_seconds(&self) -> f64 {
        self.len() as f64 / f64::from(self.sample_rate)
    }

    pub fn peak(&self) -> T {
        self.left.iter().chain(&self.right).fold(T::zero(), |m, x| m.max(x.abs()))
    }

    /// `(L + R) / 2`.
    pub fn mono(&self) -> Vec<T> {
        let half = T::lit(0.5);
        self.left.iter().zip(&self.right).map(|(l, r)| (*l + *r) * half).collect()
    }
}

/// Equal-power gains `(cos((p+1)π/4), sin((p+1)π/4))`.
pub fn pan_gains<T: Real>(pan: T) -> (T, T) {
    let angle = (pan.max(-T::one()).min(T::one()) + T::one()) * T::FRAC_PI_4();
    (angle.cos(), angle.sin())
}

fn lerp<T: Real>(a: T, b: T, w: T) -> T {
    a + (b - a) * w
}

/// Synthesizes the timeline without the final peak normalization.
///
/// Frame `k` sits at `k · seconds_per_step`; parameters ramp linearly between
/// neighbouring frames. A single frame is held for one step.
pub fn render_unmastered<T: Real>(
    timeline: &[SonicFrame<T>],
    cfg: &AudioConfig<T>,
    mapping: &MappingConfig<T>,
) -> Result<AudioBuffer<T>> {
    if timeline.is_empty() {
        return Err(Error::Input("cannot render an empty timeline".into()));
    }
    cfg.validate()?;
    let sr = T::from_u32(cfg.sample_rate).expect("sample rate fits scalar");
    let samples_per_step = cfg.seconds_per_step * sr;
    let steps = (timeline.len() - 1).max(1);
    let total = (T::from_usize_lossy(steps) * samples_per_step).round().to_usize().unwrap_or(0);
    let last = timeline.len() - 1;
    let two_pi = T::TAU();
    let (mut phase, mut carrier) = (T::zero(), T::zero());
    let mut left = Vec::with_capacity(total);
    let mut right = Vec::with_capacity(total);

    for n in 0..total {
        let pos = T::from_usize_lossy(n) / samples_per_step;
        let k = pos.floor().to_usize().unwrap_or(0).min(last);
        let (a, b) = (&timeline[k], &timeline[(k + 1).min(last)]);
        let w = if k == last { T::zero() } else { pos - T::from_usize_lossy(k) };
        let amp = lerp(a.amplitude, b.amplitude, w);
        let pan = lerp(a.pan, b.pan, w);
        let freq = lerp(a.frequency, b.frequency, w);
        let mix = lerp(a.timbre_mix, b.timbre_mix, w);

        let sine = phase.sin();
        let complex = match mapping.waveshape {
            Waveshape::Triangle => oscillator_sample(Oscillator::Triangle, phase),
            Waveshape::RingMod => sine * carrier.sin(),
        };
        let y = (T::one() - mix) * sine + mix * complex;
        let (gl, gr) = pan_gains(pan);
        left.push(amp * gl * y);
        right.push(amp * gr * y);

        phase = (phase + two_pi * freq / sr) % two_pi;
        carrier = (carrier + two_pi * mapping.ring_ratio * freq / sr) % two_pi;
    }
    Ok(AudioBuffer { left, right, sample_rate: cfg.sample_rate })
}

/// Renders the timeline and normalizes the peak to -1 dBFS. Silent buffers
/// stay silent.
pub fn render<T: Real>(
    timeline: &[SonicFrame<T>],
    cfg: &AudioConfig<T>,
    mapping: &MappingConfig<T>,
) -> Result<AudioBuffer<T>> {
    let mut buf = render_unmastered(timeline, cfg, mapping)?;
    let peak = buf.peak();
    if peak > T::zero() {
        let gain = T::lit(MASTER_PEAK) / peak;
        buf.left.iter_mut().chain(buf.right.iter_mut()).for_each(|x| *x *= gain);
    }
    Ok(buf)
}
