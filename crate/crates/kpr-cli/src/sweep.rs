//! Accuracy-by-belief grid for the noisy-report protocol.

use rayon::prelude::*;

use kpr_core::{
    final_utilization, run_simulation, ProtocolConfig, ProtocolKind, RngStream, SweepCell,
    SweepGrid, FINAL_WINDOW,
};

use crate::config::SimConfig;
use crate::error::{CliError, CliResult};

/// Default axis 0.0, 0.1, …, 1.0.
pub fn default_axis() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

/// Run the grid: every (alpha, pi) cell repeats the base configuration
/// under every seed and records the mean and sample standard deviation of
/// the final utilization (window of [`FINAL_WINDOW`] periods, clamped to
/// the run length).
///
/// Seeds are shared across cells, so cells differ only in the protocol
/// parameters, never in the draw sequence they start from.
pub fn run_sweep(alphas: &[f64], pis: &[f64], base: &SimConfig) -> CliResult<SweepGrid> {
    let ProtocolKind::Rp6 { .. } = base.run.protocol.kind else {
        return Err(CliError::usage(format!(
            "sweep requires protocol rp6, got {}",
            base.run.protocol.kind.label()
        )));
    };
    if alphas.is_empty() || pis.is_empty() {
        return Err(CliError::usage("sweep axes must be non-empty"));
    }
    base.validate()?;
    for &alpha in alphas {
        ProtocolKind::Rp6 { alpha, pi: 0.0 }.validate(base.run.n)?;
    }
    for &pi in pis {
        ProtocolKind::Rp6 { alpha: 0.0, pi }.validate(base.run.n)?;
    }

    let window = FINAL_WINDOW.min(base.run.periods);
    let cells: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&alpha| pis.iter().map(move |&pi| (alpha, pi)))
        .collect();

    let jobs: Vec<(usize, u64)> = (0..cells.len())
        .flat_map(|c| base.seeds.iter().map(move |&s| (c, s)))
        .collect();
    let finals: Result<Vec<f64>, kpr_core::Error> = jobs
        .par_iter()
        .map(|&(cell_idx, seed)| {
            let (alpha, pi) = cells[cell_idx];
            let mut config = base.run.clone();
            config.protocol = ProtocolConfig {
                kind: ProtocolKind::Rp6 { alpha, pi },
                literal_equations: base.run.protocol.literal_equations,
            };
            let series = run_simulation(&config, &mut RngStream::new(seed))?;
            final_utilization(&series, window)
        })
        .collect();
    let finals = finals?;

    let per_cell = base.seeds.len();
    let grid_cells = cells
        .iter()
        .enumerate()
        .map(|(c, &(alpha, pi))| {
            let values = &finals[c * per_cell..(c + 1) * per_cell];
            let mean = values.iter().sum::<f64>() / per_cell as f64;
            let std = if per_cell < 2 {
                0.0
            } else {
                (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (per_cell - 1) as f64)
                    .sqrt()
            };
            SweepCell {
                alpha,
                pi,
                mean_final_utilization: mean,
                std_final_utilization: std,
                seeds: per_cell,
            }
        })
        .collect();

    Ok(SweepGrid {
        alphas: alphas.to_vec(),
        pis: pis.to_vec(),
        cells: grid_cells,
    })
}
