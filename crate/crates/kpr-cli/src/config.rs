//! Experiment configuration: defaults, config-file parsing, and the
//! flags-over-file-over-defaults precedence.

use std::fmt;
use std::path::{Path, PathBuf};

use kpr_core::{derive_run_seed, ProtocolConfig, ProtocolKind, RunConfig, VariantId};

use crate::error::{CliError, CliResult};

pub const DEFAULT_N: usize = 1000;
pub const DEFAULT_PERIODS: usize = 20;
pub const DEFAULT_SEED_COUNT: usize = 10;
pub const DEFAULT_SEED_BASE: u64 = 42;
pub const DEFAULT_OUT: &str = "results.csv";

/// One fully resolved experiment: a run shape plus the seeds to repeat it
/// with and where the rows go.
#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub run: RunConfig,
    pub seeds: Vec<u64>,
    pub out: PathBuf,
}

impl SimConfig {
    pub fn validate(&self) -> CliResult<()> {
        self.run.validate()?;
        if self.seeds.is_empty() {
            return Err(CliError::usage("at least one seed is required"));
        }
        Ok(())
    }
}

/// Seeds for a batch of `count` runs under one master seed.
pub fn derive_seeds(seed_base: u64, count: usize) -> Vec<u64> {
    (0..count as u64)
        .map(|i| derive_run_seed(seed_base, i))
        .collect()
}

/// Partially specified configuration; `None` means "not given here".
/// Later sources overlay earlier ones field by field.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartialConfig {
    pub protocol: Option<String>,
    pub variant: Option<u64>,
    pub n: Option<usize>,
    pub periods: Option<usize>,
    pub seeds: Option<usize>,
    pub seed_base: Option<u64>,
    pub k: Option<usize>,
    pub customer_group_size: Option<usize>,
    pub restaurant_group_size: Option<usize>,
    pub alpha: Option<f64>,
    pub pi: Option<f64>,
    pub literal_equations: Option<bool>,
    pub out: Option<PathBuf>,
}

impl PartialConfig {
    /// `over` wins wherever it specifies a value.
    pub fn overlay(mut self, over: PartialConfig) -> PartialConfig {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if over.$field.is_some() { self.$field = over.$field; })*
            };
        }
        take!(
            protocol,
            variant,
            n,
            periods,
            seeds,
            seed_base,
            k,
            customer_group_size,
            restaurant_group_size,
            alpha,
            pi,
            literal_equations,
            out
        );
        self
    }

    /// Parse a flat `key=value` config file; `#` starts a comment and
    /// unknown keys are rejected.
    pub fn from_file(path: &Path) -> CliResult<PartialConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = PartialConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!(
                    "{}:{}: expected key=value, got `{line}`",
                    path.display(),
                    lineno + 1
                ))
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad = |what: &str| {
                CliError::usage(format!(
                    "{}:{}: invalid {what} `{value}`",
                    path.display(),
                    lineno + 1
                ))
            };
            match key {
                "protocol" => cfg.protocol = Some(value.to_string()),
                "variant" => cfg.variant = Some(value.parse().map_err(|_| bad("variant"))?),
                "n" => cfg.n = Some(value.parse().map_err(|_| bad("n"))?),
                "periods" => cfg.periods = Some(value.parse().map_err(|_| bad("periods"))?),
                "seeds" => cfg.seeds = Some(value.parse().map_err(|_| bad("seeds"))?),
                "seed-base" => cfg.seed_base = Some(value.parse().map_err(|_| bad("seed-base"))?),
                "k" => cfg.k = Some(value.parse().map_err(|_| bad("k"))?),
                "customer-group-size" => {
                    cfg.customer_group_size =
                        Some(value.parse().map_err(|_| bad("customer-group-size"))?)
                }
                "restaurant-group-size" => {
                    cfg.restaurant_group_size =
                        Some(value.parse().map_err(|_| bad("restaurant-group-size"))?)
                }
                "alpha" => cfg.alpha = Some(value.parse().map_err(|_| bad("alpha"))?),
                "pi" => cfg.pi = Some(value.parse().map_err(|_| bad("pi"))?),
                "literal-equations" => {
                    cfg.literal_equations =
                        Some(value.parse().map_err(|_| bad("literal-equations"))?)
                }
                "out" => cfg.out = Some(PathBuf::from(value)),
                other => {
                    return Err(CliError::usage(format!(
                        "{}:{}: unknown key `{other}`",
                        path.display(),
                        lineno + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    /// Apply defaults and produce a validated [`SimConfig`].
    ///
    /// Protocol parameters default to the 5%-information settings
    /// (window/group sizes of n/20, alpha = pi = 0.05). Parameters that
    /// do not belong to the chosen protocol are rejected.
    pub fn resolve(self) -> CliResult<SimConfig> {
        let n = self.n.unwrap_or(DEFAULT_N);
        let periods = self.periods.unwrap_or(DEFAULT_PERIODS);
        let variant = match self.variant {
            None => VariantId::Variant1,
            Some(x) => VariantId::from_number(x)?,
        };
        let five_percent = (n / 20).max(1);

        let name = self.protocol.as_deref().unwrap_or("rp1");
        let kind = match name {
            "rp1" => {
                self.reject_irrelevant(
                    name,
                    &[
                        "customer-group-size",
                        "restaurant-group-size",
                        "alpha",
                        "pi",
                    ],
                )?;
                ProtocolKind::Rp1 {
                    k: self.k.unwrap_or(five_percent),
                }
            }
            "rp2" => {
                self.reject_irrelevant(name, &["k", "restaurant-group-size", "alpha", "pi"])?;
                ProtocolKind::Rp2 {
                    group_size: self.customer_group_size.unwrap_or(five_percent),
                }
            }
            "rp3" => {
                self.reject_irrelevant(name, &["k", "customer-group-size", "alpha", "pi"])?;
                ProtocolKind::Rp3 {
                    group_size: self.restaurant_group_size.unwrap_or(five_percent),
                }
            }
            "rp4" => {
                self.reject_irrelevant(
                    name,
                    &["k", "customer-group-size", "restaurant-group-size", "pi"],
                )?;
                ProtocolKind::Rp4 {
                    alpha: self.alpha.unwrap_or(0.05),
                }
            }
            "rp5" => {
                self.reject_irrelevant(
                    name,
                    &["k", "customer-group-size", "restaurant-group-size", "alpha"],
                )?;
                ProtocolKind::Rp5 {
                    pi: self.pi.unwrap_or(0.05),
                }
            }
            "rp6" => {
                self.reject_irrelevant(
                    name,
                    &["k", "customer-group-size", "restaurant-group-size"],
                )?;
                ProtocolKind::Rp6 {
                    alpha: self.alpha.unwrap_or(0.05),
                    pi: self.pi.unwrap_or(0.05),
                }
            }
            other => {
                return Err(CliError::usage(format!(
                    "unknown protocol `{other}` (expected rp1..rp6)"
                )))
            }
        };

        let protocol = ProtocolConfig {
            kind,
            literal_equations: self.literal_equations.unwrap_or(false),
        };
        let seed_count = self.seeds.unwrap_or(DEFAULT_SEED_COUNT);
        if seed_count == 0 {
            return Err(CliError::usage("seeds must be at least 1, got 0"));
        }
        let config = SimConfig {
            run: RunConfig {
                n,
                periods,
                variant,
                protocol,
            },
            seeds: derive_seeds(self.seed_base.unwrap_or(DEFAULT_SEED_BASE), seed_count),
            out: self.out.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        };
        config.validate()?;
        Ok(config)
    }

    fn reject_irrelevant(&self, protocol: &str, irrelevant: &[&str]) -> CliResult<()> {
        for &param in irrelevant {
            let given = match param {
                "k" => self.k.is_some(),
                "customer-group-size" => self.customer_group_size.is_some(),
                "restaurant-group-size" => self.restaurant_group_size.is_some(),
                "alpha" => self.alpha.is_some(),
                "pi" => self.pi.is_some(),
                _ => false,
            };
            if given {
                return Err(CliError::usage(format!(
                    "--{param} does not apply to protocol {protocol}"
                )));
            }
        }
        Ok(())
    }
}

/// One-line echo of a resolved configuration.
pub struct ConfigSummary<'a>(pub &'a SimConfig);

impl fmt::Display for ConfigSummary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let run = &self.0.run;
        write!(f, "protocol={} ", run.protocol.kind.label())?;
        match run.protocol.kind {
            ProtocolKind::Rp1 { k } => write!(f, "k={k} ")?,
            ProtocolKind::Rp2 { group_size } => write!(f, "customer-group-size={group_size} ")?,
            ProtocolKind::Rp3 { group_size } => write!(f, "restaurant-group-size={group_size} ")?,
            ProtocolKind::Rp4 { alpha } => write!(f, "alpha={alpha} ")?,
            ProtocolKind::Rp5 { pi } => write!(f, "pi={pi} ")?,
            ProtocolKind::Rp6 { alpha, pi } => write!(f, "alpha={alpha} pi={pi} ")?,
        }
        write!(
            f,
            "variant={} n={} periods={} seeds={} literal-equations={} out={}",
            run.variant.number(),
            run.n,
            run.periods,
            self.0.seeds.len(),
            run.protocol.literal_equations,
            self.0.out.display()
        )
    }
}
