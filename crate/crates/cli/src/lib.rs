//! Command-line front end: run manifests, presets and the end-to-end pipeline.

// `!(x > 0.0)` style checks are used on purpose so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod pipeline;

pub use config::{parse_config, ConfigError, Output, Preset, RunManifest, Settings};
pub use pipeline::{run, RunReport};
