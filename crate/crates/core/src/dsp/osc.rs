use crate::scalar::Real;

/// Basic periodic waveforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oscillator {
    Sine,
    /// `2/π · asin(sin φ)`: odd harmonics falling as `1/n²`.
    Triangle,
}

pub fn oscillator_sample<T: Real>(shape: Oscillator, phase: T) -> T {
    let s = phase.sin();
    match shape {
        Oscillator::Sine => s,
        Oscillator::Triangle => T::FRAC_2_PI() * s.max(-T::one()).min(T::one()).asin(),
    }
}

/// `sin(2π f1 t) · sin(2π f2 t)`: energy only at `|f1 - f2|` and `f1 + f2`.
pub fn ring_mod_sample<T: Real>(f1: T, f2: T, t: T) -> T {
    (T::TAU() * f1 * t).sin() * (T::TAU() * f2 * t).sin()
}
