//! Acceptance criteria, one test per criterion. Each prints a single
//! `[PASS]`/`[FAIL]` line; run with `-- --nocapture` to see them all.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinsonic::dsp::{read_wav, render, spectrum, stft, AudioConfig, MASTER_PEAK};
use spinsonic::oracle::{apply, brute_entropy, dense_kick};
use spinsonic::phase_space::{husimi_frame, summarize, FrameSummary};
use spinsonic::quantum::{
    apply_oat, coherent_state, entanglement_entropy, evolve_trajectory, kicked_rotor_step,
    max_diff_up_to_global_phase, Model, ScenarioConfig, SphericalAngles, StateVector,
};
use spinsonic::sonify::{build_timeline, map_pitch, MappingConfig, Waveshape};
use spinsonic::SphericalGrid;
use spinsonic_cli::{parse_config, run, Output, Preset, Settings};

type Check = Result<String, String>;

fn criterion(id: u32, title: &str, limit: Duration, body: impl FnOnce() -> Check) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = match outcome {
        Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:?}, limit {limit:?}")),
        other => other,
    };
    match &outcome {
        Ok(detail) => println!("[PASS] AC-{id:02} {title}: {detail} ({elapsed:.2?})"),
        Err(why) => println!("[FAIL] AC-{id:02} {title}: {why} ({elapsed:.2?})"),
    }
    if let Err(why) = outcome {
        panic!("AC-{id:02} failed: {why}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn entropies(cfg: &ScenarioConfig) -> Vec<f64> {
    evolve_trajectory(cfg).unwrap().iter().map(|s| entanglement_entropy(s).unwrap()).collect()
}

fn angles(theta: f64, phi: f64) -> SphericalAngles {
    SphericalAngles::new(theta, phi).unwrap()
}

fn dbfs(xs: &[f64]) -> f64 {
    let peak = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if peak == 0.0 {
        f64::NEG_INFINITY
    } else {
        20.0 * peak.log10()
    }
}

#[test]
fn ac01_product_state_entropy() {
    criterion(1, "product-state entropy", Duration::from_secs(1), || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut worst = 0.0f64;
        for l in [2, 4, 8] {
            for _ in 0..20 {
                let a = angles(rng.gen_range(0.0..=PI), rng.gen_range(-PI..PI));
                worst = worst.max(entanglement_entropy(&coherent_state(l, a).unwrap()).unwrap());
            }
        }
        ensure(worst < 1e-10, || format!("max entropy {worst:e}"))?;
        Ok(format!("max S = {worst:.1e} bits over 60 states"))
    });
}

#[test]
fn ac02_ghz_generation() {
    criterion(2, "GHZ generation at t = π/2", Duration::from_secs(5), || {
        let mut notes = Vec::new();
        let mut failures = Vec::new();
        for preset in [Preset::OatL2, Preset::OatL8] {
            let cfg = preset.scenario();
            let l = cfg.num_spins;
            let states = evolve_trajectory(&cfg).unwrap();
            let k = states.len() / 2;
            if (cfg.step_coordinate(k) - FRAC_PI_2).abs() > 1e-12 {
                failures.push(format!("{preset}: step {k} is not t = π/2"));
                continue;
            }
            let s = &states[k];
            let e = entanglement_entropy(s).unwrap();
            if (e - 1.0).abs() > 1e-8 {
                failures.push(format!("L={l}: S = {e}"));
            }
            let grid = SphericalGrid::default();
            let frame = husimi_frame(s, &grid, k);
            let maxima = frame.local_maxima(0.0);
            let cell = PI / (grid.n_theta() - 1) as f64 + 2.0 * PI / grid.n_phi() as f64;
            let lobes_ok = maxima.len() == 2
                && maxima.iter().all(|&(i, j)| {
                    let a = grid.angles(i, j);
                    let near = (a.theta - FRAC_PI_2).abs() <= cell
                        && ((a.phi - FRAC_PI_2).abs() <= cell || (a.phi + FRAC_PI_2).abs() <= cell);
                    near && (frame.value(i, j) - 0.5).abs() <= 0.01
                });
            let peak = frame.max_value();
            if !lobes_ok {
                failures.push(format!(
                    "L={l}: {} grid-local maxima (need exactly 2 near (π/2, ±π/2)), peak Q = {peak:.5}",
                    maxima.len()
                ));
            }
            notes.push(format!("L={l}: S={e:.10}, {} maxima, peak Q={peak:.5}", maxima.len()));
        }
        if failures.is_empty() {
            Ok(notes.join("; "))
        } else {
            Err(failures.join("; "))
        }
    });
}

#[test]
fn ac03_even_chain_disentangles_at_pi() {
    criterion(3, "even-L disentanglement at t = π", Duration::from_secs(5), || {
        let mut worst = 0.0f64;
        for l in [2, 4, 8] {
            let cfg = ScenarioConfig { num_spins: l, ..Preset::OatL8.scenario() };
            let last = evolve_trajectory(&cfg).unwrap().pop().unwrap();
            ensure((cfg.step_coordinate(cfg.num_steps) - PI).abs() < 1e-12, || {
                "final step is not t = π".into()
            })?;
            worst = worst.max(entanglement_entropy(&last).unwrap());
        }
        ensure(worst < 1e-8, || format!("S(π) = {worst:e}"))?;
        Ok(format!("max S(π) = {worst:.1e} bits"))
    });
}

#[test]
fn ac04_coherent_overlap_law() {
    criterion(4, "coherent-overlap law", Duration::from_secs(2), || {
        let grid = SphericalGrid::default();
        let mut worst = 0.0f64;
        for l in [2usize, 8] {
            let frame = husimi_frame(&coherent_state(l, angles(0.0, 0.0)).unwrap(), &grid, 0);
            for (i, &theta) in grid.theta_values().iter().enumerate() {
                let expect = (theta / 2.0).cos().powi(2 * l as i32);
                for j in 0..grid.n_phi() {
                    worst = worst.max((frame.value(i, j) - expect).abs());
                }
            }
        }
        ensure(worst < 1e-8, || format!("max deviation {worst:e}"))?;
        Ok(format!("max |Q - cos^2L(θ/2)| = {worst:.1e}"))
    });
}

#[test]
fn ac05_oracle_equivalence() {
    criterion(5, "oracle equivalence", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let random_state = |rng: &mut ChaCha8Rng, l: usize| {
            let amps = (0..1 << l)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            StateVector::from_amplitudes(l, amps).unwrap()
        };
        let mut worst_amp = 0.0f64;
        for draw in 0..100 {
            let l = 2 + draw % 2;
            let (alpha, beta) = (rng.gen_range(0.0..12.0), rng.gen_range(-PI..PI));
            let s = random_state(&mut rng, l);
            let dense = apply(&dense_kick(l, alpha, beta).unwrap(), &s).unwrap();
            worst_amp =
                worst_amp.max(max_diff_up_to_global_phase(&dense, &kicked_rotor_step(&s, alpha, beta)));
        }
        let mut worst_entropy = 0.0f64;
        for draw in 0..100 {
            let s = random_state(&mut rng, [2, 4, 6][draw % 3]);
            worst_entropy =
                worst_entropy.max((entanglement_entropy(&s).unwrap() - brute_entropy(&s).unwrap()).abs());
        }
        ensure(worst_amp <= 1e-8, || format!("kick amplitude diff {worst_amp:e}"))?;
        ensure(worst_entropy < 1e-9, || format!("entropy diff {worst_entropy:e}"))?;
        Ok(format!("max amp diff {worst_amp:.1e}, max entropy diff {worst_entropy:.1e}"))
    });
}

#[test]
fn ac06_beta_zero_reduction() {
    criterion(6, "β = 0 reduces to OAT", Duration::from_secs(1), || {
        let init = angles(FRAC_PI_2, 0.3);
        let cfg = ScenarioConfig {
            model: Model::KickedRotor,
            num_spins: 4,
            initial: init,
            alpha: 0.4,
            beta: 0.0,
            num_steps: 50,
            dt: 1.0,
        };
        let kicked = evolve_trajectory(&cfg).unwrap().pop().unwrap();
        let oat = apply_oat(&coherent_state(4, init).unwrap(), 50.0 * 0.1);
        let diff = max_diff_up_to_global_phase(&oat, &kicked);
        ensure(diff < 1e-8, || format!("amplitude diff {diff:e}"))?;
        Ok(format!("max amp diff {diff:.1e}"))
    });
}

#[test]
fn ac07_regular_regime() {
    criterion(7, "regular-regime phenomenology", Duration::from_secs(10), || {
        let e = entropies(&Preset::KickedL8Regular.scenario());
        let worst_drop = (1..=100).map(|k| e[k - 1] - e[k]).fold(f64::MIN, f64::max);
        ensure(worst_drop <= 0.1, || format!("entropy drops by {worst_drop:.3} bit in the first 100 kicks"))?;
        let minima: Vec<usize> = (150..=190).filter(|&k| e[k] < e[k - 1] && e[k] < e[k + 1]).collect();
        ensure(!minima.is_empty(), || "no local minimum in kicks 150..=190".into())?;
        Ok(format!(
            "largest early drop {worst_drop:.4} bit; dip at kick {:?} (S = {:.3})",
            minima, e[minima[0]]
        ))
    });
}

#[test]
fn ac08_chaotic_regime() {
    criterion(8, "chaotic-regime phenomenology", Duration::from_secs(10), || {
        let e = entropies(&Preset::KickedL8Chaotic.scenario());
        let max = e.iter().copied().fold(0.0, f64::max);
        let first = (0..=20).find(|&k| e[k] >= 0.8 * max);
        ensure(first.is_some(), || format!("80% of max {max:.3} not reached in 20 kicks"))?;
        let tail = &e[21..];
        let mean = tail.iter().sum::<f64>() / tail.len() as f64;
        let std = (tail.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / tail.len() as f64).sqrt();
        ensure(std < 0.25 * mean, || format!("plateau std {std:.3} vs mean {mean:.3}"))?;
        let e2 = entropies(&Preset::KickedL2Chaotic.scenario());
        let range = e2.iter().copied().fold(f64::MIN, f64::max) - e2.iter().copied().fold(f64::MAX, f64::min);
        ensure(range >= 0.4, || format!("L=2 fluctuation range {range:.3}"))?;
        Ok(format!(
            "L=8 reaches 80% at kick {}, plateau {mean:.3} ± {std:.3} bits; L=2 range {range:.3} bits",
            first.unwrap()
        ))
    });
}

#[test]
fn ac09_pitch_anchor() {
    criterion(9, "pitch anchor", Duration::from_millis(1), || {
        let cfg = MappingConfig::for_chain(8, 1.1);
        let at = |theta: f64, spread: f64| {
            map_pitch(&FrameSummary { peak: angles(theta, 0.0), peak_value: 1.0, spread }, &cfg)
        };
        ensure(at(1.1, 0.7) == 440.0, || format!("θ = θ_init gave {}", at(1.1, 0.7)))?;
        for theta in [0.0, 0.5, 2.0, PI] {
            ensure(at(theta, 0.0) == 440.0, || format!("spread 0 at θ={theta} gave {}", at(theta, 0.0)))?;
        }
        Ok("440.0 Hz exactly".into())
    });
}

fn held(frames: usize, amplitude: f64, pan: f64, frequency: f64, mix: f64) -> Vec<spinsonic::SonicFrame> {
    (0..frames)
        .map(|k| spinsonic::SonicFrame { amplitude, pan, frequency, timbre_mix: mix, step_index: k })
        .collect()
}

#[test]
fn ac10_ring_mod_spectrum() {
    criterion(10, "ring-mod spectrum", Duration::from_secs(2), || {
        let mapping = MappingConfig { waveshape: Waveshape::RingMod, ..MappingConfig::for_chain(8, 0.0) };
        ensure(mapping.ring_ratio * 440.0 == 1100.0, || "carrier is not 1100 Hz".into())?;
        let audio = AudioConfig { sample_rate: 44_100, seconds_per_step: 1.0 };
        let buf = render(&held(2, 1.0, 0.0, 440.0, 1.0), &audio, &mapping).unwrap();
        let sg = stft(&buf, 4096, 1024).unwrap();
        let bin = sg.bin_width();
        let idx = |f: f64| (f / bin).round() as usize;
        for (t, row) in sg.magnitudes_db.iter().enumerate() {
            let mut peaks: Vec<usize> =
                (1..row.len() - 1).filter(|&k| row[k] > row[k - 1] && row[k] >= row[k + 1]).collect();
            peaks.sort_by(|a, b| row[*b].partial_cmp(&row[*a]).unwrap());
            let mut top: Vec<f64> = peaks.iter().take(2).map(|&k| sg.frequencies[k]).collect();
            top.sort_by(|a, b| a.partial_cmp(b).unwrap());
            ensure(
                top.len() == 2 && (top[0] - 660.0).abs() <= bin && (top[1] - 1540.0).abs() <= bin,
                || format!("frame {t}: strongest peaks at {top:?}"),
            )?;
            for f in [440.0, 1100.0] {
                ensure(row[idx(f)] <= -40.0, || format!("frame {t}: {f} Hz at {:.1} dB", row[idx(f)]))?;
            }
        }
        Ok(format!("{} frames: peaks at 660/1540 Hz, 440/1100 Hz below -40 dB", sg.times.len()))
    });
}

#[test]
fn ac11_timbre_endpoints() {
    criterion(11, "timbre endpoints", Duration::from_secs(3), || {
        // zero-entropy timeline from an actual product-state frame
        let grid = SphericalGrid::default();
        let theta0 = FRAC_PI_2;
        let state = coherent_state(8, angles(theta0, FRAC_PI_2)).unwrap();
        let summary = summarize(&husimi_frame(&state, &grid, 0)).unwrap();
        let mapping = MappingConfig::for_chain(8, theta0);
        let timeline = build_timeline(&[summary, summary], &[0.0, 0.0], &mapping).unwrap();
        ensure(timeline.iter().all(|f| f.timbre_mix == 0.0), || "non-zero mix".into())?;
        let audio = AudioConfig { sample_rate: 44_100, seconds_per_step: 1.0 };
        let pure = render(&timeline, &audio, &mapping).unwrap();
        for (name, ch) in [("left", &pure.left), ("right", &pure.right)] {
            let peaks = spectrum(ch, 44_100).peaks_above(-40.0);
            ensure(peaks.len() == 1, || format!("{name} channel has peaks at {peaks:?} Hz"))?;
        }
        let tri = render(&held(2, 1.0, 0.0, 440.0, 1.0), &audio, &mapping).unwrap();
        let sp = spectrum(&tri.left, 44_100);
        let ratio = sp.at(1320.0) / sp.at(440.0);
        ensure((ratio * 9.0 - 1.0).abs() <= 0.02, || format!("h3/h1 = {ratio:.5}"))?;
        Ok(format!("pure tone: one peak per channel; triangle h3/h1 = {ratio:.5} (1/9 = 0.11111)"))
    });
}

#[test]
fn ac12_dsp_safety_and_determinism() {
    criterion(12, "DSP safety and determinism", Duration::from_secs(30), || {
        let root = tempfile::tempdir().unwrap();
        let mut checked = 0;
        for preset in Preset::ALL {
            for shape in ["triangle", "ringmod"] {
                let mut outputs = Vec::new();
                for rep in 0..2 {
                    let dir = root.path().join(format!("{preset}-{shape}-{rep}"));
                    let mut flags = Settings::new();
                    flags.set("preset", preset.name()).unwrap();
                    flags.set("waveshape", shape).unwrap();
                    flags.set("emit", "wav,entropy_csv,sonic_csv").unwrap();
                    flags.set("out", dir.to_str().unwrap()).unwrap();
                    let manifest = parse_config(&flags, None).unwrap();
                    assert!(manifest.wants(Output::Wav));
                    let report =
                        run(&manifest, &mut std::io::sink()).map_err(|e| format!("{preset}: {e:#}"))?;
                    let peak = report.audio.as_ref().unwrap().peak();
                    ensure(peak <= MASTER_PEAK + 1e-6, || format!("{preset}/{shape}: peak {peak}"))?;
                    let wav = dir.join("out.wav");
                    let spec = hound::WavReader::open(&wav).map_err(|e| e.to_string())?.spec();
                    ensure(
                        spec.channels == 2
                            && spec.sample_rate == 44_100
                            && spec.bits_per_sample == 16
                            && spec.sample_format == hound::SampleFormat::Int,
                        || format!("{preset}: unexpected WAV spec {spec:?}"),
                    )?;
                    let bytes = std::fs::read(&wav).unwrap();
                    ensure(&bytes[0..4] == b"RIFF" && &bytes[8..12] == b"WAVE", || "not RIFF/WAVE".into())?;
                    ensure(u16::from_le_bytes([bytes[20], bytes[21]]) == 1, || "not plain PCM".into())?;
                    let back = read_wav(&wav).map_err(|e| e.to_string())?;
                    ensure(back.peak() <= MASTER_PEAK + 1.0 / 32767.0, || {
                        "stored peak above -1 dBFS".into()
                    })?;
                    let files: Vec<Vec<u8>> = ["out.wav", "entropy.csv", "sonic.csv"]
                        .iter()
                        .map(|f| std::fs::read(dir.join(f)).unwrap())
                        .collect();
                    outputs.push(files);
                }
                ensure(outputs[0] == outputs[1], || format!("{preset}/{shape}: runs differ"))?;
                checked += 1;
            }
        }
        Ok(format!("{checked} preset renders peak-safe, valid PCM16 stereo, byte-identical on rerun"))
    });
}

#[test]
fn ac13_pan_anchors() {
    criterion(13, "pan anchors", Duration::from_secs(2), || {
        let grid = SphericalGrid::default();
        let audio = AudioConfig { sample_rate: 44_100, seconds_per_step: 1.0 };
        let mut notes = Vec::new();
        for (phi, silent_right) in [(0.0, true), (PI, false)] {
            let s = coherent_state(8, angles(FRAC_PI_2, phi)).unwrap();
            let summary = summarize(&husimi_frame(&s, &grid, 0)).unwrap();
            let mapping = MappingConfig::for_chain(8, FRAC_PI_2);
            let tl = build_timeline(&[summary, summary], &[0.0, 0.0], &mapping).unwrap();
            let buf = render(&tl, &audio, &mapping).unwrap();
            let (loud, quiet) = if silent_right { (&buf.left, &buf.right) } else { (&buf.right, &buf.left) };
            let (l_db, q_db) = (dbfs(loud), dbfs(quiet));
            ensure(q_db <= -60.0 && (l_db + 1.0).abs() < 1e-6, || {
                format!("φ={phi}: {l_db:.1} / {q_db:.1} dBFS")
            })?;
            notes.push(format!("φ={phi:.3}: far channel {q_db} dBFS"));
        }
        Ok(notes.join("; "))
    });
}
