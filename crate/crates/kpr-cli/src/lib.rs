//! Experiment driver for the KPR simulator: configuration resolution,
//! batch runners, figure presets, parameter sweeps, and CSV export.

pub mod config;
pub mod csv;
pub mod error;
pub mod presets;
pub mod runner;
pub mod sweep;

pub use config::{derive_seeds, PartialConfig, SimConfig};
pub use error::{CliError, CliResult, EXIT_INTERNAL, EXIT_IO, EXIT_USAGE};
pub use presets::{
    execute_preset, five_percent_protocol, preset_plan, PresetOverrides, PresetPlan,
};
pub use runner::{aggregate_block, run_baseline_seeds, run_seeds};
pub use sweep::{default_axis, run_sweep};
