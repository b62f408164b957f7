//! Utilization and stability fractions, per-seed series, and multi-run
//! aggregation.

use crate::engine::VariantId;
use crate::error::{Error, Result};
use crate::model::{CustomerState, PeriodOutcome};

/// Window used for "final" utilization figures.
pub const FINAL_WINDOW: usize = 10;

/// Fraction of restaurants that served someone this period; with as many
/// customers as restaurants this equals the fraction of customers served.
pub fn utilization_fraction(outcome: &PeriodOutcome, n: usize) -> f64 {
    debug_assert_eq!(outcome.n(), n);
    (n - outcome.idle_count()) as f64 / n as f64
}

/// Fraction of stable customers. Under Variant 1 a customer is stable
/// when her vector is one-hot; under Variant 2 when the current period
/// served her.
pub fn stability_fraction(customers: &[CustomerState], variant: VariantId) -> f64 {
    let stable = match variant {
        VariantId::Variant1 => customers.iter().filter(|c| c.vector.is_stable()).count(),
        VariantId::Variant2 => customers.iter().filter(|c| c.served_current).count(),
    };
    stable as f64 / customers.len() as f64
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodRecord {
    pub period: usize,
    pub utilization: f64,
    pub stability: f64,
}

/// Identifies one run in exported data.
#[derive(Clone, Debug, PartialEq)]
pub struct RunMeta {
    pub protocol: String,
    pub variant: VariantId,
    pub n: usize,
    pub seed: u64,
}

/// Per-period fractions of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsSeries {
    pub meta: RunMeta,
    pub records: Vec<PeriodRecord>,
}

impl MetricsSeries {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Cross-seed mean and sample standard deviation for one period.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AggregateRecord {
    pub period: usize,
    pub mean_utilization: f64,
    pub std_utilization: f64,
    pub mean_stability: f64,
    pub std_stability: f64,
}

fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// Combine same-configuration runs into per-period means and sample
/// standard deviations. All series must have the same length.
pub fn aggregate_runs(series: &[MetricsSeries]) -> Result<Vec<AggregateRecord>> {
    let first = series
        .first()
        .ok_or_else(|| Error::InvalidConfig("aggregation needs at least one series".into()))?;
    let len = first.len();
    for s in series {
        if s.len() != len {
            return Err(Error::SeriesMismatch {
                expected: len,
                got: s.len(),
            });
        }
    }
    let mut out = Vec::with_capacity(len);
    let mut u = Vec::with_capacity(series.len());
    let mut st = Vec::with_capacity(series.len());
    for t in 0..len {
        u.clear();
        st.clear();
        for s in series {
            u.push(s.records[t].utilization);
            st.push(s.records[t].stability);
        }
        let (mean_u, std_u) = mean_and_std(&u);
        let (mean_s, std_s) = mean_and_std(&st);
        out.push(AggregateRecord {
            period: first.records[t].period,
            mean_utilization: mean_u,
            std_utilization: std_u,
            mean_stability: mean_s,
            std_stability: std_s,
        });
    }
    Ok(out)
}

/// Mean utilization over the last `window` periods of a run.
pub fn final_utilization(series: &MetricsSeries, window: usize) -> Result<f64> {
    if window == 0 || window > series.len() {
        return Err(Error::InvalidConfig(format!(
            "window {window} out of range for a series of {} periods",
            series.len()
        )));
    }
    let tail = &series.records[series.len() - window..];
    Ok(tail.iter().map(|r| r.utilization).sum::<f64>() / window as f64)
}

/// One point of a parameter sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepCell {
    pub alpha: f64,
    pub pi: f64,
    pub mean_final_utilization: f64,
    pub std_final_utilization: f64,
    pub seeds: usize,
}

/// Accuracy-by-belief grid of final utilizations, rows ordered by alpha
/// then pi.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepGrid {
    pub alphas: Vec<f64>,
    pub pis: Vec<f64>,
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn cell(&self, alpha_idx: usize, pi_idx: usize) -> &SweepCell {
        &self.cells[alpha_idx * self.pis.len() + pi_idx]
    }
}
