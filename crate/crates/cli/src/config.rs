//! Run manifests: defaults, named presets, `key = value` files and flags.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use spinsonic::quantum::Model;
use spinsonic::sonify::Waveshape;
use spinsonic::{AudioConfig, MappingConfig, ScenarioConfig, SphericalAngles, SphericalGrid};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid value for `{key}`: {message}")]
    Usage { key: String, message: String },
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("{path}:{line}: expected `key = value`")]
    Syntax { path: PathBuf, line: usize },
    #[error("cannot read config file {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
}

fn usage(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Usage { key: key.to_string(), message: message.into() }
}

/// Artifact a run can write into its output directory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Output {
    Wav,
    EntropyCsv,
    SonicCsv,
    HusimiFrames,
    SpectrogramCsv,
}

impl Output {
    pub const ALL: [Output; 5] =
        [Output::Wav, Output::EntropyCsv, Output::SonicCsv, Output::HusimiFrames, Output::SpectrogramCsv];

    pub fn name(self) -> &'static str {
        match self {
            Output::Wav => "wav",
            Output::EntropyCsv => "entropy_csv",
            Output::SonicCsv => "sonic_csv",
            Output::HusimiFrames => "husimi_frames",
            Output::SpectrogramCsv => "spectrogram_csv",
        }
    }
}

impl FromStr for Output {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Output::ALL.into_iter().find(|o| o.name() == s).ok_or_else(|| format!("unknown output `{s}`"))
    }
}

/// Named built-in scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    OatL2,
    OatL8,
    KickedL2Regular,
    KickedL8Regular,
    KickedL2Chaotic,
    KickedL8Chaotic,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::OatL2,
        Preset::OatL8,
        Preset::KickedL2Regular,
        Preset::KickedL8Regular,
        Preset::KickedL2Chaotic,
        Preset::KickedL8Chaotic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::OatL2 => "oat-l2",
            Preset::OatL8 => "oat-l8",
            Preset::KickedL2Regular => "kicked-l2-regular",
            Preset::KickedL8Regular => "kicked-l8-regular",
            Preset::KickedL2Chaotic => "kicked-l2-chaotic",
            Preset::KickedL8Chaotic => "kicked-l8-chaotic",
        }
    }

    /// OAT presets: `|π/2, -π/2⟩`, 200 steps covering `t ∈ [0, π]`.
    /// Kicked presets: `|0, 0⟩`, β = π/2, 200 kicks.
    pub fn scenario(self) -> ScenarioConfig {
        let oat = |num_spins| ScenarioConfig {
            model: Model::Oat,
            num_spins,
            initial: SphericalAngles { theta: FRAC_PI_2, phi: -FRAC_PI_2 },
            alpha: 0.0,
            beta: 0.0,
            num_steps: 200,
            dt: PI / 200.0,
        };
        let kicked = |num_spins, alpha| ScenarioConfig {
            model: Model::KickedRotor,
            num_spins,
            initial: SphericalAngles { theta: 0.0, phi: 0.0 },
            alpha,
            beta: FRAC_PI_2,
            num_steps: 200,
            dt: 1.0,
        };
        match self {
            Preset::OatL2 => oat(2),
            Preset::OatL8 => oat(8),
            Preset::KickedL2Regular => kicked(2, 0.1),
            Preset::KickedL8Regular => kicked(8, 0.1),
            Preset::KickedL2Chaotic => kicked(2, 10.0),
            Preset::KickedL8Chaotic => kicked(8, 10.0),
        }
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
            format!("unknown preset `{s}` (expected one of {})", names.join(", "))
        })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything one run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub scenario: ScenarioConfig,
    pub grid: SphericalGrid,
    pub mapping: MappingConfig,
    pub audio: AudioConfig,
    pub outputs: BTreeSet<Output>,
    pub output_dir: PathBuf,
    /// Export every k-th Husimi frame.
    pub husimi_stride: usize,
    pub stft_window: usize,
    pub stft_hop: usize,
}

impl RunManifest {
    pub fn wants(&self, output: Output) -> bool {
        self.outputs.contains(&output)
    }
}

/// Recognised keys, shared by config files and command-line flags.
pub const KEYS: &[&str] = &[
    "preset",
    "model",
    "spins",
    "theta0",
    "phi0",
    "alpha",
    "beta",
    "steps",
    "dt",
    "waveshape",
    "grid",
    "seconds_per_step",
    "sample_rate",
    "out",
    "emit",
    "husimi_stride",
    "f_init",
    "f_min",
    "ring_ratio",
    "entropy_max",
    "stft_window",
    "stft_hop",
];

/// Flat key/value settings; later layers override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `key`, accepting `-` or `_` as word separator.
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<(), ConfigError> {
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey(key));
        }
        self.0.insert(key, value.into().trim().to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn overlay(&mut self, other: &Settings) {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse_file_contents(text: &str, path: &Path) -> Result<Self, ConfigError> {
        let mut out = Settings::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { path: path.to_path_buf(), line: n + 1 })?;
            out.set(k, v)?;
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
        Self::parse_file_contents(&text, path)
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.get(key).map(|v| v.parse::<T>().map_err(|e| usage(key, format!("`{v}`: {e}")))).transpose()
    }

    fn angle(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        self.get(key)
            .map(|v| {
                parse_angle(v).ok_or_else(|| usage(key, format!("`{v}` is not a number or multiple of pi")))
            })
            .transpose()
    }
}

/// Reads a real number, also accepting forms such as `pi`, `-pi/2` and
/// `0.25*pi`.
pub fn parse_angle(text: &str) -> Option<f64> {
    let t = text.trim().to_ascii_lowercase().replace(' ', "");
    if let Ok(x) = t.parse::<f64>() {
        return Some(x);
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t.strip_prefix('+').unwrap_or(&t)),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d.parse::<f64>().ok()?)),
        None => (body, None),
    };
    let coeff = match num.split_once('*') {
        Some((c, "pi")) => c.parse::<f64>().ok()?,
        None if num == "pi" => 1.0,
        _ => return None,
    };
    let value = sign * coeff * PI / den.unwrap_or(1.0);
    value.is_finite().then_some(value)
}

fn parse_model(v: &str) -> Result<Model, String> {
    match v {
        "oat" => Ok(Model::Oat),
        "kicked" | "kicked-rotor" | "kicked_rotor" => Ok(Model::KickedRotor),
        _ => Err(format!("unknown model `{v}` (expected oat or kicked)")),
    }
}

fn parse_waveshape(v: &str) -> Result<Waveshape, String> {
    match v {
        "triangle" => Ok(Waveshape::Triangle),
        "ringmod" => Ok(Waveshape::RingMod),
        _ => Err(format!("unknown waveshape `{v}` (expected triangle or ringmod)")),
    }
}

/// Resolves settings into a validated manifest.
///
/// The preset (or, without one, the default scenario for the chosen model)
/// is applied first; every explicit key then overrides it.
pub fn resolve(settings: &Settings) -> Result<RunManifest, ConfigError> {
    let model = settings.get("model").map(|v| parse_model(v).map_err(|e| usage("model", e))).transpose()?;
    let preset =
        settings.get("preset").map(|v| v.parse::<Preset>().map_err(|e| usage("preset", e))).transpose()?;
    let mut scenario = match (preset, model) {
        (Some(p), _) => p.scenario(),
        (None, Some(Model::KickedRotor)) => Preset::KickedL8Regular.scenario(),
        (None, _) => Preset::OatL8.scenario(),
    };
    if let Some(m) = model {
        scenario.model = m;
    }
    if let Some(l) = settings.parsed::<usize>("spins")? {
        scenario.num_spins = l;
    }
    if let Some(t) = settings.angle("theta0")? {
        scenario.initial.theta = t;
    }
    if let Some(p) = settings.angle("phi0")? {
        scenario.initial.phi = p;
    }
    if let Some(a) = settings.parsed::<f64>("alpha")? {
        scenario.alpha = a;
    }
    if let Some(b) = settings.angle("beta")? {
        scenario.beta = b;
    }
    if let Some(n) = settings.parsed::<usize>("steps")? {
        scenario.num_steps = n;
    }
    if let Some(dt) = settings.angle("dt")? {
        scenario.dt = dt;
    }

    let l = scenario.num_spins;
    if l % 2 != 0 {
        return Err(usage("spins", format!("{l} is odd; an equal bipartition needs an even chain")));
    }
    if !(2..=spinsonic::quantum::MAX_SPINS).contains(&l) {
        return Err(usage("spins", format!("{l} outside 2..={}", spinsonic::quantum::MAX_SPINS)));
    }
    if !(scenario.alpha >= 0.0) {
        return Err(usage("alpha", format!("{} is negative", scenario.alpha)));
    }
    if scenario.num_steps == 0 {
        return Err(usage("steps", "at least one step is required"));
    }
    if !(scenario.dt > 0.0) {
        return Err(usage("dt", format!("{} is not positive", scenario.dt)));
    }
    scenario.initial = SphericalAngles::new(scenario.initial.theta, scenario.initial.phi)
        .map_err(|e| usage("theta0", e.to_string()))?;
    scenario.validate().map_err(|e| usage("model", e.to_string()))?;

    let mut mapping = MappingConfig::for_chain(l, scenario.initial.theta);
    if let Some(w) = settings.get("waveshape") {
        mapping.waveshape = parse_waveshape(w).map_err(|e| usage("waveshape", e))?;
    }
    if let Some(v) = settings.parsed::<f64>("f_init")? {
        mapping.f_init = v;
    }
    if let Some(v) = settings.parsed::<f64>("f_min")? {
        mapping.f_min = v;
    }
    if let Some(v) = settings.parsed::<f64>("ring_ratio")? {
        mapping.ring_ratio = v;
    }
    if let Some(v) = settings.parsed::<f64>("entropy_max")? {
        mapping.entropy_max = v;
    }
    mapping.validate().map_err(|e| usage("mapping", e.to_string()))?;

    let grid = match settings.get("grid") {
        Some(g) => {
            let (a, b) =
                g.split_once(['x', 'X']).ok_or_else(|| usage("grid", format!("`{g}` is not NTHETAxNPHI")))?;
            let nt = a.trim().parse().map_err(|_| usage("grid", format!("bad theta count in `{g}`")))?;
            let np = b.trim().parse().map_err(|_| usage("grid", format!("bad phi count in `{g}`")))?;
            SphericalGrid::new(nt, np).map_err(|e| usage("grid", e.to_string()))?
        }
        None => SphericalGrid::default(),
    };

    let mut audio = AudioConfig::default();
    if let Some(sr) = settings.parsed::<u32>("sample_rate")? {
        audio.sample_rate = sr;
    }
    if let Some(s) = settings.parsed::<f64>("seconds_per_step")? {
        audio.seconds_per_step = s;
    }
    audio.validate().map_err(|e| {
        let key = if audio.sample_rate < 8000 { "sample_rate" } else { "seconds_per_step" };
        usage(key, e.to_string())
    })?;

    let outputs: BTreeSet<Output> = match settings.get("emit") {
        Some(list) if list.trim() == "all" => Output::ALL.into_iter().collect(),
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<Output>().map_err(|e| usage("emit", e)))
            .collect::<Result<_, _>>()?,
        None => Output::ALL.into_iter().collect(),
    };
    if outputs.is_empty() {
        return Err(usage("emit", "select at least one output"));
    }

    let husimi_stride = settings.parsed::<usize>("husimi_stride")?.unwrap_or(10);
    if husimi_stride == 0 {
        return Err(usage("husimi_stride", "must be at least 1"));
    }
    let stft_window = settings.parsed::<usize>("stft_window")?.unwrap_or(4096);
    if stft_window < 256 || !stft_window.is_power_of_two() {
        return Err(usage("stft_window", format!("{stft_window} is not a power of two >= 256")));
    }
    let stft_hop = settings.parsed::<usize>("stft_hop")?.unwrap_or(1024);
    if stft_hop == 0 || stft_hop > stft_window {
        return Err(usage("stft_hop", format!("{stft_hop} outside 1..={stft_window}")));
    }

    Ok(RunManifest {
        scenario,
        grid,
        mapping,
        audio,
        outputs,
        output_dir: PathBuf::from(settings.get("out").unwrap_or("out")),
        husimi_stride,
        stft_window,
        stft_hop,
    })
}

/// Defaults, then the optional config file, then command-line settings.
pub fn parse_config(flags: &Settings, config_file: Option<&Path>) -> Result<RunManifest, ConfigError> {
    let mut merged = match config_file {
        Some(path) => Settings::from_file(path)?,
        None => Settings::new(),
    };
    merged.overlay(flags);
    resolve(&merged)
}
