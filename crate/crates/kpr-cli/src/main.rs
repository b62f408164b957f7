//! `kpr` — seedable simulator of repeated restaurant choice under the six
//! limited-information revision protocols.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kpr_cli::config::{ConfigSummary, PartialConfig, SimConfig};
use kpr_cli::csv::{export_series, export_sweep};
use kpr_cli::error::CliResult;
use kpr_cli::presets::{execute_preset, plan_summary, preset_plan, PresetOverrides};
use kpr_cli::runner::{run_baseline_seeds, run_seeds};
use kpr_cli::sweep::{default_axis, run_sweep};
use kpr_core::final_utilization;

#[derive(Parser)]
#[command(
    name = "kpr",
    version,
    about = "Simulates N customers competing for N single-capacity restaurants under \
             limited-information probability-revision protocols (rp1..rp6)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration across its seeds and export the series CSV.
    Run(RunArgs),
    /// Run a canned figure-reproduction batch.
    Preset(PresetArgs),
    /// Sweep the rp6 accuracy/belief grid.
    Sweep(SweepArgs),
    /// Pure random choice with no revision (utilization reference 1-1/e).
    Baseline(BaselineArgs),
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Flat key=value configuration file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Revision protocol: rp1..rp6.
    #[arg(long)]
    protocol: Option<String>,
    /// Loyalty variant: 1 (loyal forever) or 2 (loyal while served).
    #[arg(long)]
    variant: Option<u64>,
    /// Number of customers and restaurants.
    #[arg(long)]
    n: Option<usize>,
    /// Periods per run.
    #[arg(long)]
    periods: Option<usize>,
    /// Number of seeded runs.
    #[arg(long)]
    seeds: Option<usize>,
    /// Master seed the per-run streams are derived from.
    #[arg(long = "seed-base")]
    seed_base: Option<u64>,
    /// rp1 window size.
    #[arg(long)]
    k: Option<usize>,
    /// rp2 customer group size.
    #[arg(long = "customer-group-size")]
    customer_group_size: Option<usize>,
    /// rp3 restaurant group size.
    #[arg(long = "restaurant-group-size")]
    restaurant_group_size: Option<usize>,
    /// Idle-report accuracy in [0,1] (rp4, rp6).
    #[arg(long)]
    alpha: Option<f64>,
    /// Belief in the idle report in [0,1] (rp5, rp6).
    #[arg(long)]
    pi: Option<f64>,
    /// Use the quadratic redistribution weights and renormalize.
    #[arg(long = "literal-equations")]
    literal_equations: bool,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn to_partial(&self) -> PartialConfig {
        PartialConfig {
            protocol: self.protocol.clone(),
            variant: self.variant,
            n: self.n,
            periods: self.periods,
            seeds: self.seeds,
            seed_base: self.seed_base,
            k: self.k,
            customer_group_size: self.customer_group_size,
            restaurant_group_size: self.restaurant_group_size,
            alpha: self.alpha,
            pi: self.pi,
            literal_equations: self.literal_equations.then_some(true),
            out: self.out.clone(),
        }
    }

    /// defaults < config file < flags.
    fn resolve(&self) -> CliResult<SimConfig> {
        let mut merged = PartialConfig::default();
        if let Some(path) = &self.config {
            merged = merged.overlay(PartialConfig::from_file(path)?);
        }
        merged.overlay(self.to_partial()).resolve()
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct PresetArgs {
    /// fig-u1, fig-u2, fig-s, or fig-100iter.
    name: String,
    /// Instance size override (presets default to n=1000).
    #[arg(long)]
    n: Option<usize>,
    /// Periods override.
    #[arg(long)]
    periods: Option<usize>,
    /// Seed count override.
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long = "seed-base")]
    seed_base: Option<u64>,
    /// Base output path; derived files add suffixes to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated accuracy axis (default 0.0,0.1,...,1.0).
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    /// Comma-separated belief axis (default 0.0,0.1,...,1.0).
    #[arg(long, value_delimiter = ',')]
    pis: Option<Vec<f64>>,
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    periods: Option<usize>,
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long = "seed-base")]
    seed_base: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_run(args: &RunArgs) -> CliResult<()> {
    let config = args.common.resolve()?;
    println!("{}", ConfigSummary(&config));
    let runs = run_seeds(&config.run, &config.seeds)?;
    export_series(&config.out, &runs)?;

    let window = kpr_core::FINAL_WINDOW.min(config.run.periods);
    let finals: Result<Vec<f64>, _> = runs.iter().map(|s| final_utilization(s, window)).collect();
    let finals = finals?;
    let mean = finals.iter().sum::<f64>() / finals.len() as f64;
    println!(
        "final utilization (last {window} periods): mean {mean:.4} over {} seeds",
        runs.len()
    );
    println!(
        "wrote {} ({} data rows)",
        config.out.display(),
        runs.len() * config.run.periods
    );
    Ok(())
}

fn cmd_preset(args: &PresetArgs) -> CliResult<()> {
    let overrides = PresetOverrides {
        n: args.n,
        periods: args.periods,
        seeds: args.seeds,
        seed_base: args.seed_base,
        out: args.out.clone(),
    };
    let plan = preset_plan(&args.name, &overrides)?;
    println!("{}", plan_summary(&plan));
    let written = execute_preset(&plan)?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<()> {
    let mut partial = args.common.to_partial();
    if partial.protocol.is_none() {
        partial.protocol = Some("rp6".to_string());
    }
    if partial.variant.is_none() {
        partial.variant = Some(2);
    }
    if partial.periods.is_none() {
        partial.periods = Some(100);
    }
    let mut merged = PartialConfig::default();
    if let Some(path) = &args.common.config {
        merged = merged.overlay(PartialConfig::from_file(path)?);
    }
    let config = merged.overlay(partial).resolve()?;

    let alphas = args.alphas.clone().unwrap_or_else(default_axis);
    let pis = args.pis.clone().unwrap_or_else(default_axis);
    println!(
        "sweep: {} x {} cells, {} seeds, variant={} n={} periods={}",
        alphas.len(),
        pis.len(),
        config.seeds.len(),
        config.run.variant.number(),
        config.run.n,
        config.run.periods
    );
    let grid = run_sweep(&alphas, &pis, &config)?;
    export_sweep(&config.out, &grid)?;
    println!(
        "wrote {} ({} cells)",
        config.out.display(),
        grid.cells.len()
    );
    Ok(())
}

fn cmd_baseline(args: &BaselineArgs) -> CliResult<()> {
    let partial = PartialConfig {
        n: args.n,
        periods: args.periods,
        seeds: args.seeds,
        seed_base: args.seed_base,
        out: args.out.clone(),
        ..Default::default()
    };
    let config = partial.resolve()?;
    println!(
        "baseline: n={} periods={} seeds={} out={}",
        config.run.n,
        config.run.periods,
        config.seeds.len(),
        config.out.display()
    );
    let runs = run_baseline_seeds(config.run.n, config.run.periods, &config.seeds)?;
    export_series(&config.out, &runs)?;

    let period1 = runs.iter().map(|s| s.records[0].utilization).sum::<f64>() / runs.len() as f64;
    println!("period-1 mean utilization: {period1:.4} (random reference 1-1/e = 0.6321)");
    println!("wrote {}", config.out.display());
    Ok(())
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Preset(args) => cmd_preset(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Baseline(args) => cmd_baseline(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
