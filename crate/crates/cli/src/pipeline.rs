//! simulate → summarize → map → render, writing the selected artifacts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use rayon::prelude::*;
use spinsonic::dsp::{render, stft, write_wav};
use spinsonic::phase_space::{husimi_frame, summarize};
use spinsonic::quantum::{entanglement_entropy, evolve_trajectory, Model};
use spinsonic::sonify::{build_timeline, write_timeline_csv};
use spinsonic::{AudioBuffer, FrameSummary, HusimiFrame, SonicFrame};

use crate::config::{Output, RunManifest};

pub const WAV_FILE: &str = "out.wav";
pub const ENTROPY_FILE: &str = "entropy.csv";
pub const SONIC_FILE: &str = "sonic.csv";
pub const SPECTROGRAM_FILE: &str = "spectrogram.csv";
pub const ENTROPY_CSV_HEADER: &str = "step,time_or_kick,entropy_bits";

pub fn husimi_file_name(step: usize) -> String {
    format!("husimi_{step:04}.csv")
}

/// What a completed run produced.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub steps: usize,
    pub entropies: Vec<f64>,
    pub max_entropy: f64,
    pub timeline: Option<Vec<SonicFrame>>,
    pub audio: Option<AudioBuffer>,
    pub files: Vec<PathBuf>,
}

/// Tracks written files so a failed run can clean up after itself.
struct Artifacts {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Artifacts {
    fn create(&mut self, name: &str) -> Result<BufWriter<File>> {
        let path = self.dir.join(name);
        let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        self.written.push(path);
        Ok(BufWriter::new(file))
    }

    fn remove_all(&self) {
        for p in &self.written {
            let _ = std::fs::remove_file(p);
        }
    }
}

/// Runs the whole pipeline, logging one line per stage to `log`. On failure
/// every file written by this run is removed.
pub fn run<W: Write>(manifest: &RunManifest, log: &mut W) -> Result<RunReport> {
    std::fs::create_dir_all(&manifest.output_dir)
        .with_context(|| format!("creating output directory {}", manifest.output_dir.display()))?;
    let mut artifacts = Artifacts { dir: manifest.output_dir.clone(), written: Vec::new() };
    match run_stages(manifest, &mut artifacts, log) {
        Ok(mut report) => {
            report.files = artifacts.written;
            Ok(report)
        }
        Err(e) => {
            artifacts.remove_all();
            Err(e)
        }
    }
}

fn run_stages<W: Write>(m: &RunManifest, artifacts: &mut Artifacts, log: &mut W) -> Result<RunReport> {
    let scenario = &m.scenario;
    let states = evolve_trajectory(scenario)?;
    let entropies = states.par_iter().map(entanglement_entropy).collect::<spinsonic::Result<Vec<f64>>>()?;
    let max_entropy = entropies.iter().copied().fold(0.0, f64::max);
    writeln!(
        log,
        "simulate: {} {} with L={}, max entropy {:.6} bits",
        scenario.num_steps,
        match scenario.model {
            Model::Oat => "twist steps",
            Model::KickedRotor => "kicks",
        },
        scenario.num_spins,
        max_entropy
    )?;

    if m.wants(Output::EntropyCsv) {
        let mut w = artifacts.create(ENTROPY_FILE)?;
        writeln!(w, "{ENTROPY_CSV_HEADER}")?;
        for (k, e) in entropies.iter().enumerate() {
            writeln!(w, "{},{},{}", k, scenario.step_coordinate(k), e)?;
        }
        w.flush()?;
    }

    let needs_audio = m.wants(Output::Wav) || m.wants(Output::SpectrogramCsv);
    let needs_frames = needs_audio || m.wants(Output::SonicCsv) || m.wants(Output::HusimiFrames);
    let mut report = RunReport {
        steps: scenario.num_steps,
        entropies,
        max_entropy,
        timeline: None,
        audio: None,
        files: Vec::new(),
    };
    if !needs_frames {
        return Ok(report);
    }

    let export_frames = m.wants(Output::HusimiFrames);
    let analysed: Vec<(FrameSummary, Option<HusimiFrame>)> = states
        .par_iter()
        .enumerate()
        .map(|(k, s)| {
            let frame = husimi_frame(s, &m.grid, k);
            let summary = summarize(&frame)?;
            let keep = export_frames && k % m.husimi_stride == 0;
            Ok((summary, keep.then_some(frame)))
        })
        .collect::<spinsonic::Result<_>>()?;
    let mut exported = 0;
    for frame in analysed.iter().filter_map(|(_, f)| f.as_ref()) {
        let mut w = artifacts.create(&husimi_file_name(frame.step_index))?;
        frame.write_csv(&mut w)?;
        w.flush()?;
        exported += 1;
    }
    let summaries: Vec<FrameSummary> = analysed.into_iter().map(|(s, _)| s).collect();
    let timeline = build_timeline(&summaries, &report.entropies, &m.mapping)?;
    writeln!(
        log,
        "analyse: {} Husimi frames on a {}x{} grid, {} exported",
        summaries.len(),
        m.grid.n_theta(),
        m.grid.n_phi(),
        exported
    )?;
    if m.wants(Output::SonicCsv) {
        let mut w = artifacts.create(SONIC_FILE)?;
        write_timeline_csv(&timeline, &mut w)?;
        w.flush()?;
    }

    if needs_audio {
        let buffer = render(&timeline, &m.audio, &m.mapping)?;
        let peak = buffer.peak();
        writeln!(
            log,
            "render: {:.3} s stereo at {} Hz, peak {:.3} dBFS",
            buffer.duration_seconds(),
            buffer.sample_rate,
            if peak > 0.0 { 20.0 * peak.log10() } else { f64::NEG_INFINITY }
        )?;
        if m.wants(Output::Wav) {
            let path = artifacts.dir.join(WAV_FILE);
            artifacts.written.push(path.clone());
            write_wav(&buffer, &path)?;
        }
        if m.wants(Output::SpectrogramCsv) {
            let sg = stft(&buffer, m.stft_window, m.stft_hop)?;
            let mut w = artifacts.create(SPECTROGRAM_FILE)?;
            sg.write_csv(&mut w)?;
            w.flush()?;
            writeln!(log, "analyse: spectrogram {} frames x {} bins", sg.times.len(), sg.frequencies.len())?;
        }
        report.audio = Some(buffer);
    }
    report.timeline = Some(timeline);
    Ok(report)
}
