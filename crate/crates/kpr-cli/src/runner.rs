//! Batch execution: one run per seed, parallel across runs, output order
//! independent of scheduling.

use rayon::prelude::*;

use kpr_core::{aggregate_runs, run_baseline, run_simulation, MetricsSeries, RngStream, RunConfig};

use crate::csv::AggregateBlock;
use crate::error::CliResult;

/// All seeds of one configuration, in seed order.
pub fn run_seeds(config: &RunConfig, seeds: &[u64]) -> CliResult<Vec<MetricsSeries>> {
    config.validate()?;
    let results: Result<Vec<_>, _> = seeds
        .par_iter()
        .map(|&seed| run_simulation(config, &mut RngStream::new(seed)))
        .collect();
    Ok(results?)
}

/// Baseline (no revision) runs for every seed.
pub fn run_baseline_seeds(
    n: usize,
    periods: usize,
    seeds: &[u64],
) -> CliResult<Vec<MetricsSeries>> {
    let results: Result<Vec<_>, _> = seeds
        .par_iter()
        .map(|&seed| run_baseline(n, periods, &mut RngStream::new(seed)))
        .collect();
    Ok(results?)
}

/// Aggregate one configuration's runs into a CSV block.
pub fn aggregate_block(series: &[MetricsSeries]) -> CliResult<AggregateBlock> {
    let records = aggregate_runs(series)?;
    let first = &series[0].meta;
    Ok(AggregateBlock {
        protocol: first.protocol.clone(),
        variant: first.variant,
        seeds: series.len(),
        records,
    })
}
