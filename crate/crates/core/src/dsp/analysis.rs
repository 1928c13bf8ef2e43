use std::io::Write;

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::render::AudioBuffer;

/// Level assigned to empty bins and silent input, in dB.
pub const DB_FLOOR: f64 = -120.0;

/// Short-time magnitude spectra in dB relative to the matrix maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram<T = f64> {
    /// Frame centres in seconds.
    pub times: Vec<T>,
    /// Bin centres in Hz, `0..=sample_rate/2`.
    pub frequencies: Vec<T>,
    /// One row per frame, one column per bin.
    pub magnitudes_db: Vec<Vec<T>>,
}

impl<T: Real> Spectrogram<T> {
    /// Index of the loudest bin of frame `t`.
    pub fn peak_bin(&self, t: usize) -> usize {
        argmax(&self.magnitudes_db[t])
    }

    pub fn bin_width(&self) -> T {
        self.frequencies[1] - self.frequencies[0]
    }

    /// CSV matrix: first row holds the frequencies (after an empty corner
    /// cell), each following row a frame time followed by its dB values.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let header: Vec<String> = self.frequencies.iter().map(|f| f.to_string()).collect();
        writeln!(out, ",{}", header.join(","))?;
        for (t, row) in self.times.iter().zip(&self.magnitudes_db) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{},{}", t, cells.join(","))?;
        }
        Ok(())
    }
}

fn argmax<T: Real>(xs: &[T]) -> usize {
    xs.iter()
        .enumerate()
        .fold((0, T::neg_infinity()), |best, (i, &v)| if v > best.1 { (i, v) } else { best })
        .0
}

/// Periodic Hann window.
fn hann<T: Real>(n: usize) -> Vec<T> {
    let nf = T::from_usize_lossy(n);
    (0..n)
        .map(|i| {
            let x = T::TAU() * T::from_usize_lossy(i) / nf;
            T::lit(0.5) * (T::one() - x.cos())
        })
        .collect()
}

fn to_db<T: Real>(mag: T, reference: T) -> T {
    let floor = T::lit(DB_FLOOR);
    if !(reference > T::zero()) || !(mag > T::zero()) {
        return floor;
    }
    (T::lit(20.0) * (mag / reference).log10()).max(floor)
}

/// Hann-windowed STFT of the mono mix of `buffer`.
pub fn stft<T: Real>(buffer: &AudioBuffer<T>, window_size: usize, hop: usize) -> Result<Spectrogram<T>> {
    if window_size < 256 || !window_size.is_power_of_two() {
        return Err(Error::Input(format!("window size must be a power of two >= 256, got {window_size}")));
    }
    if hop == 0 || hop > window_size {
        return Err(Error::Input(format!("hop must be in 1..={window_size}, got {hop}")));
    }
    let mono = buffer.mono();
    if mono.len() < window_size {
        return Err(Error::Input(format!(
            "buffer of {} samples is shorter than one {window_size}-sample window",
            mono.len()
        )));
    }
    let sr = T::from_u32(buffer.sample_rate).expect("sample rate fits scalar");
    let window = hann::<T>(window_size);
    let fft = FftPlanner::<T>::new().plan_fft_forward(window_size);
    let bins = window_size / 2 + 1;

    let mut times = Vec::new();
    let mut raw = Vec::new();
    let mut scratch = vec![Complex::new(T::zero(), T::zero()); window_size];
    let mut start = 0;
    while start + window_size <= mono.len() {
        for ((dst, x), w) in scratch.iter_mut().zip(&mono[start..]).zip(&window) {
            *dst = Complex::new(*x * *w, T::zero());
        }
        fft.process(&mut scratch);
        raw.push(scratch[..bins].iter().map(|z| z.norm()).collect::<Vec<T>>());
        times.push(T::from_usize_lossy(start + window_size / 2) / sr);
        start += hop;
    }
    let reference = raw.iter().flatten().copied().fold(T::zero(), T::max);
    let magnitudes_db =
        raw.into_iter().map(|row| row.into_iter().map(|m| to_db(m, reference)).collect()).collect();
    let frequencies =
        (0..bins).map(|k| T::from_usize_lossy(k) * sr / T::from_usize_lossy(window_size)).collect();
    Ok(Spectrogram { times, frequencies, magnitudes_db })
}

/// One Hann-windowed magnitude spectrum over a whole signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T = f64> {
    pub bin_hz: T,
    pub magnitudes: Vec<T>,
}

impl<T: Real> Spectrum<T> {
    /// Magnitude at the bin nearest `hz`.
    pub fn at(&self, hz: T) -> T {
        let k = (hz / self.bin_hz).round().to_usize().unwrap_or(0);
        self.magnitudes[k.min(self.magnitudes.len() - 1)]
    }

    /// Level of `hz` relative to the strongest bin, in dB.
    pub fn db_at(&self, hz: T) -> T {
        to_db(self.at(hz), self.max())
    }

    pub fn max(&self) -> T {
        self.magnitudes.iter().copied().fold(T::zero(), T::max)
    }

    /// Bins that are local maxima and lie above `threshold_db` relative to the
    /// strongest bin.
    pub fn peaks_above(&self, threshold_db: T) -> Vec<usize> {
        let max = self.max();
        let m = &self.magnitudes;
        (0..m.len())
            .filter(|&k| {
                let left = if k == 0 { T::zero() } else { m[k - 1] };
                let right = if k + 1 == m.len() { T::zero() } else { m[k + 1] };
                m[k] > left && m[k] >= right && to_db(m[k], max) > threshold_db
            })
            .collect()
    }
}

/// Magnitude spectrum of the full signal under a periodic Hann window; bins
/// are `sample_rate / len` apart.
pub fn spectrum<T: Real>(samples: &[T], sample_rate: u32) -> Spectrum<T> {
    let n = samples.len();
    let window = hann::<T>(n);
    let mut data: Vec<Complex<T>> =
        samples.iter().zip(&window).map(|(x, w)| Complex::new(*x * *w, T::zero())).collect();
    if n > 0 {
        FftPlanner::<T>::new().plan_fft_forward(n).process(&mut data);
    }
    let sr = T::from_u32(sample_rate).expect("sample rate fits scalar");
    let bins = if n == 0 { 0 } else { n / 2 + 1 };
    Spectrum {
        bin_hz: sr / T::from_usize_lossy(n.max(1)),
        magnitudes: data[..bins].iter().map(|z| z.norm()).collect(),
    }
}
