//! Deterministic simulator for the Kolkata Paise Restaurant coordination
//! game.
//!
//! N customers repeatedly pick among N single-capacity restaurants; a
//! restaurant with several visitors serves one of them at random. Between
//! periods, unserved customers revise their choice distributions using
//! one of six limited-information protocols (RP1–RP6), orchestrated by
//! one of two loyalty variants. The crate exposes the period engine,
//! the protocols, and utilization/stability metrics; everything is
//! seedable and reproduces bit-identically for a given seed.

pub mod engine;
pub mod error;
pub mod metrics;
pub mod model;
pub mod protocols;
pub mod rng;
pub mod vector;

pub use engine::{
    advance_period, apply_variant1, apply_variant2, resolve_period, run_baseline, run_from_state,
    run_simulation, RunConfig, VariantId, WorldState,
};
pub use error::{Error, Result};
pub use metrics::{
    aggregate_runs, final_utilization, stability_fraction, utilization_fraction, AggregateRecord,
    MetricsSeries, PeriodRecord, RunMeta, SweepCell, SweepGrid, FINAL_WINDOW,
};
pub use model::{CustomerState, PeriodOutcome};
pub use protocols::{
    noisy_idle_set, partition_view, restaurant_group_view, rp1_rp2_revise, rp3_revise, rp4_revise,
    rp5_revise, rp6_revise, window_view, GroupView, PeriodContext, ProtocolConfig, ProtocolKind,
};
pub use rng::{derive_run_seed, RngStream};
pub use vector::{ProbabilityVector, RestaurantSet, RevisionMode, NORMALIZATION_TOLERANCE};
