use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use spinsonic_cli::{parse_config, run, ConfigError, Settings};

/// Simulate entanglement dynamics in a spin-1/2 chain and render it as sound.
///
/// Values are layered: built-in defaults, then the preset, then --config FILE
/// (flat `key = value` lines using the flag names), then the flags given here.
#[derive(Debug, Parser)]
#[command(name = "spinsonic", version)]
struct Cli {
    /// oat-l2, oat-l8, kicked-l2-regular, kicked-l8-regular, kicked-l2-chaotic, kicked-l8-chaotic
    #[arg(long)]
    preset: Option<String>,
    /// oat | kicked
    #[arg(long)]
    model: Option<String>,
    /// Chain length L (even, 2..=14)
    #[arg(long)]
    spins: Option<String>,
    /// Initial polar angle; accepts forms like pi/2
    #[arg(long, allow_hyphen_values = true)]
    theta0: Option<String>,
    /// Initial azimuth; accepts forms like -pi/2
    #[arg(long, allow_hyphen_values = true)]
    phi0: Option<String>,
    /// Kick strength
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Rotation angle per kick
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Number of steps (OAT samples or kicks)
    #[arg(long)]
    steps: Option<String>,
    /// OAT time increment
    #[arg(long)]
    dt: Option<String>,
    /// triangle | ringmod
    #[arg(long)]
    waveshape: Option<String>,
    /// Husimi grid as NTHETAxNPHI
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    seconds_per_step: Option<String>,
    #[arg(long)]
    sample_rate: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<String>,
    /// Comma list of wav, entropy_csv, sonic_csv, husimi_frames, spectrogram_csv (or all)
    #[arg(long)]
    emit: Option<String>,
    /// Export every K-th Husimi frame
    #[arg(long)]
    husimi_stride: Option<String>,
    /// key = value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Cli {
    fn settings(&self) -> Result<Settings, ConfigError> {
        let mut s = Settings::new();
        let pairs = [
            ("preset", &self.preset),
            ("model", &self.model),
            ("spins", &self.spins),
            ("theta0", &self.theta0),
            ("phi0", &self.phi0),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("steps", &self.steps),
            ("dt", &self.dt),
            ("waveshape", &self.waveshape),
            ("grid", &self.grid),
            ("seconds_per_step", &self.seconds_per_step),
            ("sample_rate", &self.sample_rate),
            ("out", &self.out),
            ("emit", &self.emit),
            ("husimi_stride", &self.husimi_stride),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                s.set(key, v.as_str())?;
            }
        }
        Ok(s)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let manifest = match cli.settings().and_then(|s| parse_config(&s, cli.config.as_deref())) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(&manifest, &mut stdout) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
