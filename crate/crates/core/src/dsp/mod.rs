//! Stereo synthesis of a sonic timeline, spectral analysis and WAV output.

mod analysis;
mod osc;
mod render;
mod wav;

pub use analysis::{spectrum, stft, Spectrogram, Spectrum, DB_FLOOR};
pub use osc::{oscillator_sample, ring_mod_sample, Oscillator};
pub use render::{pan_gains, render, render_unmastered, AudioBuffer, AudioConfig, MASTER_PEAK};
pub use wav::{read_wav, write_wav};
