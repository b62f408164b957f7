//! The six probability-revision protocols and the limited-information
//! views they consume.
//!
//! An unserved customer never sees the full allocation. Depending on the
//! protocol she knows one of:
//!
//! - the restaurants visited by a sliding window of neighbors (RP1) or by
//!   her own fixed group of customers (RP2),
//! - which restaurants in one block of restaurants served anyone (RP3),
//! - a reported set of idle restaurants, exact or noisy, believed fully
//!   (RP4) or partially (RP5, RP6).
//!
//! Every revision moves probability mass away from restaurants believed
//! busy and onto the rest, keeping the vector a distribution.

use crate::error::{Error, Result};
use crate::model::PeriodOutcome;
use crate::rng::RngStream;
use crate::vector::{ProbabilityVector, RestaurantSet, RevisionMode};

/// Chance that a busy restaurant still shows up in a fully uninformed
/// idle report, and the baseline for partially accurate ones.
const IDLE_BASE_RATE: f64 = 1.0 / std::f64::consts::E;

/// Which revision protocol is active, with its parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProtocolKind {
    /// Window of `k` successor customers (plus the agent herself).
    Rp1 { k: usize },
    /// Fixed contiguous customer groups of the given size.
    Rp2 { group_size: usize },
    /// Fixed contiguous restaurant groups of the given size.
    Rp3 { group_size: usize },
    /// Reported idle set with accuracy `alpha`, believed fully.
    Rp4 { alpha: f64 },
    /// Exact idle set, believed with probability `pi`.
    Rp5 { pi: f64 },
    /// Reported idle set with accuracy `alpha`, believed with `pi`.
    Rp6 { alpha: f64, pi: f64 },
}

impl ProtocolKind {
    pub fn label(&self) -> &'static str {
        match self {
            ProtocolKind::Rp1 { .. } => "rp1",
            ProtocolKind::Rp2 { .. } => "rp2",
            ProtocolKind::Rp3 { .. } => "rp3",
            ProtocolKind::Rp4 { .. } => "rp4",
            ProtocolKind::Rp5 { .. } => "rp5",
            ProtocolKind::Rp6 { .. } => "rp6",
        }
    }

    /// Check parameters against the instance size `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let unit = |name: &str, x: f64| {
            if (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must lie in [0, 1], got {x}"
                )))
            }
        };
        match *self {
            ProtocolKind::Rp1 { k } => {
                if k == 0 || k > n - 1 {
                    return Err(Error::InvalidConfig(format!(
                        "window size k must lie in 1..={}, got {k}",
                        n - 1
                    )));
                }
            }
            ProtocolKind::Rp2 { group_size } | ProtocolKind::Rp3 { group_size } => {
                if group_size == 0 || group_size > n {
                    return Err(Error::InvalidConfig(format!(
                        "group size must lie in 1..={n}, got {group_size}"
                    )));
                }
            }
            ProtocolKind::Rp4 { alpha } => unit("alpha", alpha)?,
            ProtocolKind::Rp5 { pi } => unit("pi", pi)?,
            ProtocolKind::Rp6 { alpha, pi } => {
                unit("alpha", alpha)?;
                unit("pi", pi)?;
            }
        }
        Ok(())
    }
}

/// Active protocol plus the redistribution flavor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolConfig {
    pub kind: ProtocolKind,
    /// Use the quadratic redistribution weights instead of the
    /// mass-preserving proportional ones; see [`RevisionMode`].
    pub literal_equations: bool,
}

impl ProtocolConfig {
    pub fn new(kind: ProtocolKind) -> Self {
        ProtocolConfig {
            kind,
            literal_equations: false,
        }
    }

    pub fn mode(&self) -> RevisionMode {
        if self.literal_equations {
            RevisionMode::LiteralEquations
        } else {
            RevisionMode::MassPreserving
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        self.kind.validate(n)
    }
}

/// Restaurants a group of restaurants splits into after a period: those
/// that served someone and those that sat idle.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupView {
    pub served: Vec<usize>,
    pub idle: Vec<usize>,
}

/// Restaurants visited by customer `i` and her `k` successors (indices
/// wrap around), her own choice included.
pub fn window_view(i: usize, choices: &[usize], k: usize) -> RestaurantSet {
    let n = choices.len();
    RestaurantSet::from_ids(n, (0..=k).map(|m| choices[(i + m) % n]))
}

/// Restaurants visited by the members of `i`'s customer group. Groups are
/// contiguous index blocks of `group_size`; the last block may be short.
/// Every member of a block sees the same view.
pub fn partition_view(i: usize, choices: &[usize], group_size: usize) -> RestaurantSet {
    let n = choices.len();
    let start = (i / group_size) * group_size;
    let end = (start + group_size).min(n);
    RestaurantSet::from_ids(n, (start..end).map(|m| choices[m]))
}

/// Split of the restaurant block containing `r` into served and idle
/// members. Blocks are contiguous id ranges of `group_size`.
pub fn restaurant_group_view(r: usize, outcome: &PeriodOutcome, group_size: usize) -> GroupView {
    let n = outcome.n();
    let start = (r / group_size) * group_size;
    let end = (start + group_size).min(n);
    let mut served = Vec::new();
    let mut idle = Vec::new();
    for j in start..end {
        if outcome.is_idle(j) {
            idle.push(j);
        } else {
            served.push(j);
        }
    }
    GroupView { served, idle }
}

/// Reported idle set with accuracy `alpha`.
///
/// Each restaurant is included independently: a truly idle one with
/// probability `alpha + (1-alpha)/e`, a busy one with `(1-alpha)/e`. At
/// `alpha = 1` the report is exact; at `alpha = 0` every restaurant
/// appears with the uninformative rate `1/e`. One draw is consumed per
/// restaurant, in ascending id order, so stream positions do not depend
/// on the idle pattern.
pub fn noisy_idle_set(true_idle: &[bool], alpha: f64, rng: &mut RngStream) -> RestaurantSet {
    let mut reported = RestaurantSet::empty(true_idle.len());
    let idle_rate = alpha + (1.0 - alpha) * IDLE_BASE_RATE;
    let busy_rate = (1.0 - alpha) * IDLE_BASE_RATE;
    for (j, &idle) in true_idle.iter().enumerate() {
        let rate = if idle { idle_rate } else { busy_rate };
        if rng.next_f64() < rate {
            reported.insert(j);
        }
    }
    reported
}

/// Mass concentrated on `target`: proportional to the current entries
/// when they put anything there, uniform over `target` otherwise.
fn concentrate_on(v: &ProbabilityVector, target: &RestaurantSet) -> Vec<f64> {
    debug_assert!(!target.is_empty());
    let n = v.len();
    let mut inside = 0.0;
    for j in target.ids() {
        inside += v.entry(j);
    }
    let mut out = vec![0.0; n];
    if inside == 0.0 {
        let share = 1.0 / target.len() as f64;
        for j in target.ids() {
            out[j] = share;
        }
    } else {
        for j in target.ids() {
            out[j] = v.entry(j) / inside;
        }
    }
    out
}

/// Removal of the agent's own failed restaurant only: its mass is spread
/// in proportion to the remaining entries, or evenly when it held
/// everything.
fn remove_own_choice(v: &ProbabilityVector, own: usize) -> Vec<f64> {
    let n = v.len();
    let mut rest = 0.0;
    for j in 0..n {
        if j != own {
            rest += v.entry(j);
        }
    }
    let mut out = vec![0.0; n];
    if rest == 0.0 {
        let share = 1.0 / (n - 1) as f64;
        for (j, slot) in out.iter_mut().enumerate() {
            if j != own {
                *slot = share;
            }
        }
    } else {
        for (j, slot) in out.iter_mut().enumerate() {
            if j != own {
                *slot = v.entry(j) / rest;
            }
        }
    }
    out
}

/// RP1/RP2: zero out every restaurant the agent knows was visited (her
/// own failed choice included) and redistribute their mass over the rest.
/// When the view covers all restaurants the update degenerates; the agent
/// falls back to a uniform draw over everything but her own choice.
pub fn rp1_rp2_revise(
    v: &ProbabilityVector,
    visited: &RestaurantSet,
    own_choice: usize,
    mode: RevisionMode,
) -> ProbabilityVector {
    let n = v.len();
    debug_assert_eq!(visited.universe(), n);
    if visited.len() >= n {
        return ProbabilityVector::dense_exact(remove_all_but_uniform(n, own_choice));
    }
    v.zero_and_redistribute(visited, mode)
        .expect("visited set leaves at least one restaurant")
}

fn remove_all_but_uniform(n: usize, own: usize) -> Vec<f64> {
    debug_assert!(n >= 2);
    let share = 1.0 / (n - 1) as f64;
    let mut out = vec![share; n];
    out[own] = 0.0;
    out
}

/// RP3: within the block of restaurants the agent has information about,
/// move the mass held by served members onto the idle members; entries
/// outside the block are untouched. With no idle member the vector is
/// returned unchanged.
pub fn rp3_revise(
    v: &ProbabilityVector,
    group: &GroupView,
    mode: RevisionMode,
) -> ProbabilityVector {
    if group.idle.is_empty() {
        return v.clone();
    }
    let served_mass: f64 = group.served.iter().map(|&j| v.entry(j)).sum();
    let idle_mass: f64 = group.idle.iter().map(|&j| v.entry(j)).sum();

    let mut out = v.to_dense();
    for &j in &group.served {
        out[j] = 0.0;
    }
    if idle_mass == 0.0 {
        let share = served_mass / group.idle.len() as f64;
        for &j in &group.idle {
            out[j] = v.entry(j) + share;
        }
    } else {
        match mode {
            RevisionMode::MassPreserving => {
                let factor = 1.0 + served_mass / idle_mass;
                for &j in &group.idle {
                    out[j] = v.entry(j) * factor;
                }
            }
            RevisionMode::LiteralEquations => {
                // Quadratic weights, rescaled so the block keeps exactly
                // the mass it held; entries outside stay bit-identical.
                let mut weighted = 0.0;
                for &j in &group.idle {
                    let p = v.entry(j);
                    weighted += p * (1.0 + served_mass * p / idle_mass);
                }
                let scale = (served_mass + idle_mass) / weighted;
                for &j in &group.idle {
                    let p = v.entry(j);
                    out[j] = p * (1.0 + served_mass * p / idle_mass) * scale;
                }
            }
        }
    }
    ProbabilityVector::dense_exact(out)
}

/// RP4: believe the reported idle set outright and move all mass onto it.
/// An empty report carries no information; the agent then only removes
/// her own failed choice.
pub fn rp4_revise(
    v: &ProbabilityVector,
    reported_idle: &RestaurantSet,
    own_choice: usize,
) -> ProbabilityVector {
    let out = if reported_idle.is_empty() {
        remove_own_choice(v, own_choice)
    } else {
        concentrate_on(v, reported_idle)
    };
    ProbabilityVector::dense_exact(out)
}

/// RP5: blend full belief and full disbelief in the idle report.
///
/// With weight `pi` the agent concentrates on the reported set as in RP4;
/// with weight `1 - pi` she ignores it and just removes her own failed
/// restaurant.
pub fn rp5_revise(
    v: &ProbabilityVector,
    reported_idle: &RestaurantSet,
    own_choice: usize,
    pi: f64,
) -> ProbabilityVector {
    let believe = if reported_idle.is_empty() {
        remove_own_choice(v, own_choice)
    } else {
        concentrate_on(v, reported_idle)
    };
    let disbelieve = remove_own_choice(v, own_choice);
    let blended: Vec<f64> = believe
        .iter()
        .zip(&disbelieve)
        .map(|(&b, &d)| pi * b + (1.0 - pi) * d)
        .collect();
    ProbabilityVector::dense_exact(blended)
}

/// RP6: same blend as RP5, fed with a noisy idle report instead of the
/// exact one. The caller draws the report once per period with
/// [`noisy_idle_set`] and shares it across customers.
pub fn rp6_revise(
    v: &ProbabilityVector,
    noisy_idle: &RestaurantSet,
    own_choice: usize,
    pi: f64,
) -> ProbabilityVector {
    rp5_revise(v, noisy_idle, own_choice, pi)
}

/// Per-period revision context: resolves the active protocol's shared
/// information once, then revises any number of unserved customers
/// against the same snapshot.
pub struct PeriodContext<'a> {
    config: ProtocolConfig,
    outcome: &'a PeriodOutcome,
    /// Idle report shared by all customers this period (RP4/RP5/RP6).
    reported_idle: Option<RestaurantSet>,
}

impl<'a> PeriodContext<'a> {
    /// Build the context, drawing the noisy idle report (one draw per
    /// restaurant, ascending id) when the protocol calls for one.
    pub fn prepare(
        config: ProtocolConfig,
        outcome: &'a PeriodOutcome,
        rng: &mut RngStream,
    ) -> Self {
        let reported_idle = match config.kind {
            ProtocolKind::Rp4 { alpha } | ProtocolKind::Rp6 { alpha, .. } => {
                Some(noisy_idle_set(&outcome.idle_flags(), alpha, rng))
            }
            ProtocolKind::Rp5 { .. } => {
                Some(RestaurantSet::from_ids(outcome.n(), outcome.idle_ids()))
            }
            _ => None,
        };
        PeriodContext {
            config,
            outcome,
            reported_idle,
        }
    }

    /// Revised vector for an unserved customer. Pure in `(customer,
    /// vector)` given the period snapshot, so revision order never
    /// matters.
    pub fn revise(&self, customer: usize, vector: &ProbabilityVector) -> ProbabilityVector {
        let own = self.outcome.choices[customer];
        let mode = self.config.mode();
        match self.config.kind {
            ProtocolKind::Rp1 { k } => {
                let view = window_view(customer, &self.outcome.choices, k);
                rp1_rp2_revise(vector, &view, own, mode)
            }
            ProtocolKind::Rp2 { group_size } => {
                let view = partition_view(customer, &self.outcome.choices, group_size);
                rp1_rp2_revise(vector, &view, own, mode)
            }
            ProtocolKind::Rp3 { group_size } => {
                let view = restaurant_group_view(own, self.outcome, group_size);
                rp3_revise(vector, &view, mode)
            }
            ProtocolKind::Rp4 { .. } => rp4_revise(vector, self.reported(), own),
            ProtocolKind::Rp5 { pi } => rp5_revise(vector, self.reported(), own, pi),
            ProtocolKind::Rp6 { pi, .. } => rp6_revise(vector, self.reported(), own, pi),
        }
    }

    fn reported(&self) -> &RestaurantSet {
        self.reported_idle
            .as_ref()
            .expect("idle report prepared for this protocol")
    }
}
