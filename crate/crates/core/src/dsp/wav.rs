use std::path::Path;

use crate::error::Result;
use crate::scalar::Real;

use super::render::AudioBuffer;

fn quantize(x: f64) -> i16 {
    // f64::round rounds half away from zero
    (x * 32767.0).round().clamp(-32768.0, 32767.0) as i16
}

/// Writes a 16-bit PCM stereo RIFF/WAVE file, left channel first.
pub fn write_wav<T: Real, P: AsRef<Path>>(buffer: &AudioBuffer<T>, path: P) -> Result<()> {
    let spec = hound::WavSpec {
        channels: 2,
        sample_rate: buffer.sample_rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec)?;
    {
        let mut samples = writer.get_i16_writer((buffer.len() * 2) as u32);
        for (l, r) in buffer.left.iter().zip(&buffer.right) {
            samples.write_sample(quantize(l.to_f64_lossy()));
            samples.write_sample(quantize(r.to_f64_lossy()));
        }
        samples.flush()?;
    }
    writer.finalize()?;
    Ok(())
}

/// Reads a 16-bit stereo WAV back into `[-1, 1]` samples.
pub fn read_wav<P: AsRef<Path>>(path: P) -> Result<AudioBuffer<f64>> {
    let mut reader = hound::WavReader::open(path)?;
    let spec = reader.spec();
    if spec.channels != 2 || spec.bits_per_sample != 16 || spec.sample_format != hound::SampleFormat::Int {
        return Err(crate::Error::Input(format!("expected 16-bit stereo PCM, got {spec:?}")));
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, s) in reader.samples::<i16>().enumerate() {
        let v = f64::from(s?) / 32767.0;
        if i % 2 == 0 {
            left.push(v);
        } else {
            right.push(v);
        }
    }
    Ok(AudioBuffer { left, right, sample_rate: spec.sample_rate })
}
