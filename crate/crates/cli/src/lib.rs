//! Configuration, artifact writing and the experiment pipelines behind the
//! `pmshock` binary.

pub mod artifacts;
pub mod baseline;
pub mod config;
pub mod error;
pub mod experiments;

pub use artifacts::{ArtifactWriter, Manifest, TOOL_VERSION};
pub use baseline::{compare_baseline, Drift, Tolerances};
pub use config::{ExperimentConfig, Kind, Overrides};
pub use error::{CliError, Result};
pub use experiments::{run_experiment, Check, Summary};
