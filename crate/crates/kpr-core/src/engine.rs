//! The period loop: simultaneous choices, random tie-break service, and
//! the two post-period loyalty variants.
//!
//! Variant 1 stabilizes a customer on the first restaurant that serves
//! her and never lets her leave. Variant 2 keeps her only as long as the
//! restaurant keeps serving her: on the period she is bumped, her
//! pre-stabilization vector is restored and revised, so she resumes
//! searching from her last genuine belief state.
//!
//! Randomness order within a period is fixed: one choice draw per
//! customer in ascending id, one tie-break draw per contested restaurant
//! in ascending id, then (RP4/RP6 only) one report draw per restaurant in
//! ascending id. Revisions consume no randomness.

use crate::error::{Error, Result};
use crate::metrics::{
    stability_fraction, utilization_fraction, MetricsSeries, PeriodRecord, RunMeta,
};
use crate::model::{CustomerState, PeriodOutcome};
use crate::protocols::{PeriodContext, ProtocolConfig, ProtocolKind};
use crate::rng::RngStream;
use crate::vector::ProbabilityVector;

/// The two loyalty variants every protocol comes in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantId {
    /// Once served, loyal forever.
    Variant1,
    /// Loyal only while the loyalty is reciprocated.
    Variant2,
}

impl VariantId {
    pub fn number(&self) -> u8 {
        match self {
            VariantId::Variant1 => 1,
            VariantId::Variant2 => 2,
        }
    }

    pub fn from_number(x: u64) -> Result<Self> {
        match x {
            1 => Ok(VariantId::Variant1),
            2 => Ok(VariantId::Variant2),
            other => Err(Error::InvalidConfig(format!(
                "variant must be 1 or 2, got {other}"
            ))),
        }
    }
}

/// Parameters of a single run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub periods: usize,
    pub variant: VariantId,
    pub protocol: ProtocolConfig,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if self.periods == 0 {
            return Err(Error::InvalidConfig("periods must be at least 1".into()));
        }
        self.protocol.validate(self.n)
    }
}

/// Full simulation state between periods.
#[derive(Clone, Debug)]
pub struct WorldState {
    /// Completed periods; the next one to resolve is `period + 1`.
    period: usize,
    variant: VariantId,
    protocol: ProtocolConfig,
    customers: Vec<CustomerState>,
}

impl WorldState {
    /// Fresh world: every customer starts from the uniform vector.
    pub fn new(n: usize, variant: VariantId, protocol: ProtocolConfig) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!(
                "n must be at least 2, got {n}"
            )));
        }
        protocol.validate(n)?;
        let uniform = ProbabilityVector::uniform(n)?;
        let customers = (0..n)
            .map(|id| CustomerState::new(id, uniform.clone()))
            .collect();
        Ok(WorldState {
            period: 0,
            variant,
            protocol,
            customers,
        })
    }

    /// World seeded with explicit starting vectors, one per customer.
    pub fn with_vectors(
        variant: VariantId,
        protocol: ProtocolConfig,
        vectors: Vec<ProbabilityVector>,
    ) -> Result<Self> {
        let n = vectors.len();
        if n < 2 {
            return Err(Error::InvalidConfig(format!(
                "n must be at least 2, got {n}"
            )));
        }
        protocol.validate(n)?;
        for v in &vectors {
            if v.len() != n {
                return Err(Error::InvalidConfig(format!(
                    "starting vector has {} entries, expected {n}",
                    v.len()
                )));
            }
        }
        let customers = vectors
            .into_iter()
            .enumerate()
            .map(|(id, v)| CustomerState::new(id, v))
            .collect();
        Ok(WorldState {
            period: 0,
            variant,
            protocol,
            customers,
        })
    }

    pub fn n(&self) -> usize {
        self.customers.len()
    }

    pub fn completed_periods(&self) -> usize {
        self.period
    }

    pub fn variant(&self) -> VariantId {
        self.variant
    }

    pub fn protocol(&self) -> ProtocolConfig {
        self.protocol
    }

    pub fn customers(&self) -> &[CustomerState] {
        &self.customers
    }
}

/// Resolve one period: every customer samples a restaurant from her
/// vector, each visited restaurant serves one visitor chosen uniformly at
/// random, the rest leave unserved.
pub fn resolve_period(state: &WorldState, rng: &mut RngStream) -> Result<PeriodOutcome> {
    let n = state.n();
    let mut choices = Vec::with_capacity(n);
    for customer in &state.customers {
        choices.push(customer.vector.sample(rng)?);
    }

    // Bucket visitors by restaurant (counting sort keeps ascending
    // customer order within each bucket).
    let mut offsets = vec![0usize; n + 1];
    for &r in &choices {
        offsets[r + 1] += 1;
    }
    for r in 0..n {
        offsets[r + 1] += offsets[r];
    }
    let mut visitors = vec![0usize; n];
    let mut cursor = offsets.clone();
    for (i, &r) in choices.iter().enumerate() {
        visitors[cursor[r]] = i;
        cursor[r] += 1;
    }

    let mut served = vec![None; n];
    for (r, slot) in served.iter_mut().enumerate() {
        let bucket = &visitors[offsets[r]..offsets[r + 1]];
        *slot = match bucket.len() {
            0 => None,
            1 => Some(bucket[0]),
            len => Some(bucket[rng.uniform_index(len)]),
        };
    }
    Ok(PeriodOutcome { choices, served })
}

/// Variant 1 update: served customers stabilize on their server, unserved
/// customers with a non-stable vector revise, unserved stable customers
/// stay put.
pub fn apply_variant1<F>(
    state: &mut WorldState,
    outcome: &PeriodOutcome,
    mut revise: F,
) -> Result<()>
where
    F: FnMut(usize, &ProbabilityVector) -> ProbabilityVector,
{
    for (i, customer) in state.customers.iter_mut().enumerate() {
        let choice = outcome.choices[i];
        let served = outcome.served[choice] == Some(i);
        if served {
            customer.vector = customer.vector.stabilize(choice)?;
        } else if !customer.vector.is_stable() {
            customer.vector = revise(i, &customer.vector);
        }
        let now = served;
        customer.served_current = now;
        customer.served_previous = now;
        customer.last_choice = Some(choice);
    }
    Ok(())
}

/// Variant 2 update, driven by this period's and the previous period's
/// service:
///
/// - served both periods: nothing changes;
/// - newly served: the pre-stabilization vector is saved, then the
///   customer stabilizes on her server;
/// - bumped (served before, not now): the saved vector is restored and
///   revised;
/// - unserved both periods: the current vector is revised.
pub fn apply_variant2<F>(
    state: &mut WorldState,
    outcome: &PeriodOutcome,
    mut revise: F,
) -> Result<()>
where
    F: FnMut(usize, &ProbabilityVector) -> ProbabilityVector,
{
    for (i, customer) in state.customers.iter_mut().enumerate() {
        let choice = outcome.choices[i];
        let served_now = outcome.served[choice] == Some(i);
        let served_before = customer.served_previous;
        match (served_now, served_before) {
            (true, true) => {}
            (true, false) => {
                debug_assert!(customer.saved_copy.is_none());
                let copy = customer.vector.clone();
                customer.vector = customer.vector.stabilize(choice)?;
                customer.saved_copy = Some(copy);
            }
            (false, true) => {
                let restored = customer.saved_copy.take().ok_or_else(|| {
                    Error::Internal(format!(
                        "customer {i} lost service without a saved vector to restore"
                    ))
                })?;
                customer.vector = revise(i, &restored);
            }
            (false, false) => {
                debug_assert!(customer.saved_copy.is_none());
                customer.vector = revise(i, &customer.vector);
            }
        }
        customer.served_current = served_now;
        customer.served_previous = served_now;
        customer.last_choice = Some(choice);
    }
    Ok(())
}

/// Resolve and apply one period, returning the outcome for metrics.
pub fn advance_period(state: &mut WorldState, rng: &mut RngStream) -> Result<PeriodOutcome> {
    let outcome = resolve_period(state, rng)?;
    let protocol = state.protocol;
    let ctx = PeriodContext::prepare(protocol, &outcome, rng);
    match state.variant {
        VariantId::Variant1 => apply_variant1(state, &outcome, |i, v| ctx.revise(i, v))?,
        VariantId::Variant2 => apply_variant2(state, &outcome, |i, v| ctx.revise(i, v))?,
    }
    state.period += 1;
    Ok(outcome)
}

/// Run `periods` periods from an existing state, recording utilization
/// and stability after each period's update.
pub fn run_from_state(
    mut state: WorldState,
    periods: usize,
    rng: &mut RngStream,
) -> Result<MetricsSeries> {
    let n = state.n();
    let meta = RunMeta {
        protocol: state.protocol.kind.label().to_string(),
        variant: state.variant,
        n,
        seed: rng.seed(),
    };
    let mut records = Vec::with_capacity(periods);
    let first = state.completed_periods() + 1;
    for period in first..first + periods {
        let outcome = advance_period(&mut state, rng)?;
        records.push(PeriodRecord {
            period,
            utilization: utilization_fraction(&outcome, n),
            stability: stability_fraction(&state.customers, state.variant),
        });
    }
    Ok(MetricsSeries { meta, records })
}

/// Run one full simulation from the uniform start.
pub fn run_simulation(config: &RunConfig, rng: &mut RngStream) -> Result<MetricsSeries> {
    config.validate()?;
    let state = WorldState::new(config.n, config.variant, config.protocol)?;
    run_from_state(state, config.periods, rng)
}

/// Reference strategy: every customer keeps the uniform vector forever,
/// picking a restaurant at random each period. No revision, no loyalty;
/// the stability fraction is identically zero.
pub fn run_baseline(n: usize, periods: usize, rng: &mut RngStream) -> Result<MetricsSeries> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if periods == 0 {
        return Err(Error::InvalidConfig("periods must be at least 1".into()));
    }
    // Protocol is never consulted: the state is never updated.
    let state = WorldState::new(
        n,
        VariantId::Variant1,
        ProtocolConfig::new(ProtocolKind::Rp1 { k: 1 }),
    )?;
    let meta = RunMeta {
        protocol: "baseline".to_string(),
        variant: VariantId::Variant1,
        n,
        seed: rng.seed(),
    };
    let mut records = Vec::with_capacity(periods);
    for period in 1..=periods {
        let outcome = resolve_period(&state, rng)?;
        records.push(PeriodRecord {
            period,
            utilization: utilization_fraction(&outcome, n),
            stability: stability_fraction(&state.customers, state.variant),
        });
    }
    Ok(MetricsSeries { meta, records })
}
