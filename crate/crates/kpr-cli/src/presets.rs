//! Canned experiment batches reproducing the reported figures: 20-period
//! utilization series for every protocol under both variants, Variant-1
//! stability series, the 100-period Variant-2 comparison, and the
//! accuracy-by-belief sweep.

use std::path::PathBuf;

use kpr_core::{ProtocolConfig, ProtocolKind, RunConfig, VariantId};

use crate::config::{derive_seeds, SimConfig, DEFAULT_N, DEFAULT_SEED_BASE, DEFAULT_SEED_COUNT};
use crate::csv::{export_aggregates, export_series, export_sweep, with_suffix};
use crate::error::{CliError, CliResult};
use crate::runner::{aggregate_block, run_seeds};
use crate::sweep::{default_axis, run_sweep};

pub const PRESET_NAMES: [&str; 4] = ["fig-u1", "fig-u2", "fig-s", "fig-100iter"];

/// 5%-information parameterization of a protocol at instance size `n`:
/// window and group sizes of n/20, accuracy and belief of 0.05.
pub fn five_percent_protocol(label: &str, n: usize) -> ProtocolKind {
    let size = (n / 20).max(1);
    match label {
        "rp1" => ProtocolKind::Rp1 { k: size },
        "rp2" => ProtocolKind::Rp2 { group_size: size },
        "rp3" => ProtocolKind::Rp3 { group_size: size },
        "rp4" => ProtocolKind::Rp4 { alpha: 0.05 },
        "rp5" => ProtocolKind::Rp5 { pi: 0.05 },
        other => panic!("no 5% parameterization for {other}"),
    }
}

/// Optional overrides for smoke-testing presets at reduced size.
#[derive(Clone, Debug, Default)]
pub struct PresetOverrides {
    pub n: Option<usize>,
    pub periods: Option<usize>,
    pub seeds: Option<usize>,
    pub seed_base: Option<u64>,
    pub out: Option<PathBuf>,
}

/// A resolved preset: per-seed series runs plus any sweep bases.
#[derive(Clone, Debug)]
pub struct PresetPlan {
    pub name: String,
    pub series_runs: Vec<RunConfig>,
    /// Sweep base per variant (the noisy-report protocol grid).
    pub sweep_runs: Vec<RunConfig>,
    pub seeds: Vec<u64>,
    pub out: PathBuf,
}

pub fn preset_plan(name: &str, overrides: &PresetOverrides) -> CliResult<PresetPlan> {
    let n = overrides.n.unwrap_or(DEFAULT_N);
    let seeds = derive_seeds(
        overrides.seed_base.unwrap_or(DEFAULT_SEED_BASE),
        overrides.seeds.unwrap_or(DEFAULT_SEED_COUNT),
    );
    let out = overrides
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{name}.csv")));

    let both = [VariantId::Variant1, VariantId::Variant2];
    let run = |label: &str, variant: VariantId, periods: usize| RunConfig {
        n,
        periods,
        variant,
        protocol: ProtocolConfig::new(five_percent_protocol(label, n)),
    };

    let mut series_runs = Vec::new();
    let mut sweep_runs = Vec::new();
    match name {
        "fig-u1" => {
            let periods = overrides.periods.unwrap_or(20);
            for label in ["rp1", "rp2", "rp3"] {
                for variant in both {
                    series_runs.push(run(label, variant, periods));
                }
            }
        }
        "fig-u2" => {
            let periods = overrides.periods.unwrap_or(20);
            for label in ["rp4", "rp5"] {
                for variant in both {
                    series_runs.push(run(label, variant, periods));
                }
            }
            for variant in both {
                sweep_runs.push(RunConfig {
                    n,
                    periods,
                    variant,
                    protocol: ProtocolConfig::new(ProtocolKind::Rp6 {
                        alpha: 0.05,
                        pi: 0.05,
                    }),
                });
            }
        }
        "fig-s" => {
            let periods = overrides.periods.unwrap_or(20);
            for label in ["rp1", "rp2", "rp3", "rp4", "rp5"] {
                series_runs.push(run(label, VariantId::Variant1, periods));
            }
        }
        "fig-100iter" => {
            let periods = overrides.periods.unwrap_or(100);
            for label in ["rp1", "rp2", "rp3", "rp4", "rp5"] {
                series_runs.push(run(label, VariantId::Variant2, periods));
            }
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown preset `{other}` (expected one of {})",
                PRESET_NAMES.join(", ")
            )))
        }
    }
    for config in series_runs.iter().chain(&sweep_runs) {
        config.validate()?;
    }
    Ok(PresetPlan {
        name: name.to_string(),
        series_runs,
        sweep_runs,
        seeds,
        out,
    })
}

/// Execute a preset: write the per-seed series CSV, the aggregated CSV,
/// and one sweep CSV per sweep variant. Returns the written paths.
pub fn execute_preset(plan: &PresetPlan) -> CliResult<Vec<PathBuf>> {
    let mut written = Vec::new();

    if !plan.series_runs.is_empty() {
        let mut all_series = Vec::new();
        let mut blocks = Vec::new();
        for config in &plan.series_runs {
            let runs = run_seeds(config, &plan.seeds)?;
            blocks.push(aggregate_block(&runs)?);
            all_series.extend(runs);
        }
        export_series(&plan.out, &all_series)?;
        written.push(plan.out.clone());
        let agg_path = with_suffix(&plan.out, "_agg");
        export_aggregates(&agg_path, &blocks)?;
        written.push(agg_path);
    }

    for config in &plan.sweep_runs {
        let base = SimConfig {
            run: config.clone(),
            seeds: plan.seeds.clone(),
            out: plan.out.clone(),
        };
        let axis = default_axis();
        let grid = run_sweep(&axis, &axis, &base)?;
        let suffix = format!("_rp6_sweep_v{}", config.variant.number());
        let path = with_suffix(&plan.out, &suffix);
        export_sweep(&path, &grid)?;
        written.push(path);
    }
    Ok(written)
}

/// Stable summary of what a plan will run, for the console.
pub fn plan_summary(plan: &PresetPlan) -> String {
    let mut parts = Vec::new();
    for c in &plan.series_runs {
        parts.push(format!(
            "{} v{} x{}p",
            c.protocol.kind.label(),
            c.variant.number(),
            c.periods
        ));
    }
    for c in &plan.sweep_runs {
        parts.push(format!("rp6 sweep v{} x{}p", c.variant.number(), c.periods));
    }
    format!(
        "{}: {} ({} seeds, n={})",
        plan.name,
        parts.join(", "),
        plan.seeds.len(),
        plan.series_runs
            .first()
            .or(plan.sweep_runs.first())
            .map(|c| c.n)
            .unwrap_or(0)
    )
}
