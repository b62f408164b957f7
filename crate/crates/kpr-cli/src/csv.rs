//! CSV export. Three schemas, all with a header row, newline-terminated
//! rows, and fractions printed with six fractional digits:
//!
//! - series: `protocol,variant,seed,period,utilization,stability`
//! - aggregate: `protocol,variant,period,mean_utilization,std_utilization,mean_stability,std_stability,seeds`
//! - sweep: `alpha,pi,mean_final_utilization,std_final_utilization,seeds`

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use kpr_core::{AggregateRecord, MetricsSeries, SweepGrid, VariantId};

use crate::error::{CliError, CliResult};

pub const SERIES_HEADER: &str = "protocol,variant,seed,period,utilization,stability";
pub const AGGREGATE_HEADER: &str =
    "protocol,variant,period,mean_utilization,std_utilization,mean_stability,std_stability,seeds";
pub const SWEEP_HEADER: &str = "alpha,pi,mean_final_utilization,std_final_utilization,seeds";

pub fn write_series<W: Write>(w: &mut W, series: &[MetricsSeries]) -> std::io::Result<()> {
    writeln!(w, "{SERIES_HEADER}")?;
    for s in series {
        for r in &s.records {
            writeln!(
                w,
                "{},{},{},{},{:.6},{:.6}",
                s.meta.protocol,
                s.meta.variant.number(),
                s.meta.seed,
                r.period,
                r.utilization,
                r.stability
            )?;
        }
    }
    Ok(())
}

/// One aggregated block per (protocol, variant) group.
pub struct AggregateBlock {
    pub protocol: String,
    pub variant: VariantId,
    pub seeds: usize,
    pub records: Vec<AggregateRecord>,
}

pub fn write_aggregates<W: Write>(w: &mut W, blocks: &[AggregateBlock]) -> std::io::Result<()> {
    writeln!(w, "{AGGREGATE_HEADER}")?;
    for b in blocks {
        for r in &b.records {
            writeln!(
                w,
                "{},{},{},{:.6},{:.6},{:.6},{:.6},{}",
                b.protocol,
                b.variant.number(),
                r.period,
                r.mean_utilization,
                r.std_utilization,
                r.mean_stability,
                r.std_stability,
                b.seeds
            )?;
        }
    }
    Ok(())
}

pub fn write_sweep<W: Write>(w: &mut W, grid: &SweepGrid) -> std::io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for cell in &grid.cells {
        writeln!(
            w,
            "{:.6},{:.6},{:.6},{:.6},{}",
            cell.alpha,
            cell.pi,
            cell.mean_final_utilization,
            cell.std_final_utilization,
            cell.seeds
        )?;
    }
    Ok(())
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    let file = File::create(path)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?;
    Ok(BufWriter::new(file))
}

pub fn export_series(path: &Path, series: &[MetricsSeries]) -> CliResult<()> {
    let mut w = create(path)?;
    write_series(&mut w, series)?;
    w.flush()?;
    Ok(())
}

pub fn export_aggregates(path: &Path, blocks: &[AggregateBlock]) -> CliResult<()> {
    let mut w = create(path)?;
    write_aggregates(&mut w, blocks)?;
    w.flush()?;
    Ok(())
}

pub fn export_sweep(path: &Path, grid: &SweepGrid) -> CliResult<()> {
    let mut w = create(path)?;
    write_sweep(&mut w, grid)?;
    w.flush()?;
    Ok(())
}

/// `results.csv` + `_agg` → `results_agg.csv`, keeping the extension.
pub fn with_suffix(path: &Path, suffix: &str) -> std::path::PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let ext = path.extension().map(|e| e.to_string_lossy().into_owned());
    let name = match ext {
        Some(ext) => format!("{stem}{suffix}.{ext}"),
        None => format!("{stem}{suffix}"),
    };
    path.with_file_name(name)
}
