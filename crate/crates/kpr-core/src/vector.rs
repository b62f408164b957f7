//! Probability vectors over restaurants and the primitive revision
//! operations shared by every protocol.
//!
//! A customer's strategy is a distribution over the N restaurants. A
//! vector is *stable* when a single restaurant carries the whole mass;
//! stable vectors are held in an exact one-hot representation so float
//! drift can never corrupt the stability predicate.

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Tolerance for the normalization invariant.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// How redistributed mass is spread over the surviving restaurants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RevisionMode {
    /// Spread removed mass in proportion to surviving entries (default).
    #[default]
    MassPreserving,
    /// Apply the quadratic update `p * (1 + P*p/(1-P))` to survivors and
    /// renormalize afterwards. Kept for sensitivity comparison; it skews
    /// redistribution toward already-likely restaurants.
    LiteralEquations,
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    /// Exactly one restaurant with probability 1.
    OneHot {
        hot: usize,
        len: usize,
    },
    Dense(Vec<f64>),
}

/// Distribution over restaurants; immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    repr: Repr,
}

impl ProbabilityVector {
    /// Uniform distribution: every restaurant gets `1/n`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize { size: n });
        }
        if n == 1 {
            return Ok(ProbabilityVector {
                repr: Repr::OneHot { hot: 0, len: 1 },
            });
        }
        Ok(ProbabilityVector {
            repr: Repr::Dense(vec![1.0 / n as f64; n]),
        })
    }

    /// Stable vector: probability 1 on `hot`, 0 elsewhere.
    pub fn one_hot(n: usize, hot: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize { size: n });
        }
        if hot >= n {
            return Err(Error::IndexOutOfRange { index: hot, len: n });
        }
        Ok(ProbabilityVector {
            repr: Repr::OneHot { hot, len: n },
        })
    }

    /// Validating constructor: entries must be non-negative and sum to 1
    /// within [`NORMALIZATION_TOLERANCE`]. Rounding residue is absorbed by
    /// renormalizing, and an exactly one-hot result collapses to the exact
    /// representation.
    pub fn from_entries(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidSize { size: 0 });
        }
        for (j, &p) in entries.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::CorruptedDistribution {
                    detail: format!("entry {j} is {p}"),
                });
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::CorruptedDistribution {
                detail: format!("entries sum to {sum}"),
            });
        }
        Ok(Self::normalized_dense(entries, sum))
    }

    /// Dense entries known to sum to `sum` ≈ 1; divides the residue out
    /// and canonicalizes.
    fn normalized_dense(mut entries: Vec<f64>, sum: f64) -> Self {
        if sum != 1.0 {
            for p in entries.iter_mut() {
                *p /= sum;
            }
        }
        Self::canonical(entries)
    }

    /// Collapse an exactly one-hot dense vector into the exact repr.
    fn canonical(entries: Vec<f64>) -> Self {
        let mut hot = None;
        for (j, &p) in entries.iter().enumerate() {
            if p != 0.0 {
                if p == 1.0 && hot.is_none() {
                    hot = Some(j);
                } else {
                    hot = None;
                    break;
                }
            }
        }
        match hot {
            Some(hot) => ProbabilityVector {
                repr: Repr::OneHot {
                    hot,
                    len: entries.len(),
                },
            },
            None => ProbabilityVector {
                repr: Repr::Dense(entries),
            },
        }
    }

    /// Dense construction that must keep entries bit-identical (no
    /// renormalization), used where locality guarantees forbid touching
    /// unrelated entries. Debug builds still check the invariants.
    pub(crate) fn dense_exact(entries: Vec<f64>) -> Self {
        debug_assert!(entries.iter().all(|&p| p >= 0.0));
        debug_assert!((entries.iter().sum::<f64>() - 1.0).abs() <= NORMALIZATION_TOLERANCE);
        Self::canonical(entries)
    }

    #[cfg(test)]
    pub(crate) fn dense_unchecked(entries: Vec<f64>) -> Self {
        ProbabilityVector {
            repr: Repr::Dense(entries),
        }
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::OneHot { len, .. } => *len,
            Repr::Dense(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Probability assigned to restaurant `j`.
    pub fn entry(&self, j: usize) -> f64 {
        match &self.repr {
            Repr::OneHot { hot, .. } => {
                if j == *hot {
                    1.0
                } else {
                    0.0
                }
            }
            Repr::Dense(v) => v[j],
        }
    }

    pub fn sum(&self) -> f64 {
        match &self.repr {
            Repr::OneHot { .. } => 1.0,
            Repr::Dense(v) => v.iter().sum(),
        }
    }

    /// True iff exactly one entry is 1 and every other entry is 0.
    pub fn is_stable(&self) -> bool {
        matches!(self.repr, Repr::OneHot { .. })
    }

    /// The single supported restaurant of a stable vector.
    pub fn stable_index(&self) -> Option<usize> {
        match &self.repr {
            Repr::OneHot { hot, .. } => Some(*hot),
            Repr::Dense(_) => None,
        }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        match &self.repr {
            Repr::OneHot { hot, len } => {
                let mut v = vec![0.0; *len];
                v[*hot] = 1.0;
                v
            }
            Repr::Dense(v) => v.clone(),
        }
    }

    /// All mass moved onto restaurant `r`; idempotent when already there.
    pub fn stabilize(&self, r: usize) -> Result<Self> {
        ProbabilityVector::one_hot(self.len(), r)
    }

    /// Draw a restaurant with the probabilities of this vector, consuming
    /// exactly one draw from `rng`.
    ///
    /// The dense walk scans the whole vector, so a vector whose entries no
    /// longer sum to 1 within tolerance is reported instead of silently
    /// sampled. A restaurant with zero probability is never returned.
    pub fn sample(&self, rng: &mut RngStream) -> Result<usize> {
        let u = rng.next_f64();
        match &self.repr {
            Repr::OneHot { hot, .. } => Ok(*hot),
            Repr::Dense(entries) => {
                let mut cum = 0.0;
                let mut chosen = None;
                let mut last_positive = None;
                for (j, &p) in entries.iter().enumerate() {
                    if p > 0.0 {
                        cum += p;
                        last_positive = Some(j);
                        if chosen.is_none() && u < cum {
                            chosen = Some(j);
                        }
                    } else if p < 0.0 {
                        return Err(Error::CorruptedDistribution {
                            detail: format!("entry {j} is {p}"),
                        });
                    }
                }
                if (cum - 1.0).abs() > NORMALIZATION_TOLERANCE {
                    return Err(Error::CorruptedDistribution {
                        detail: format!("entries sum to {cum}"),
                    });
                }
                // u can land past the accumulated sum only through rounding;
                // the last supported restaurant absorbs that sliver.
                chosen
                    .or(last_positive)
                    .ok_or_else(|| Error::CorruptedDistribution {
                        detail: "vector has empty support".to_string(),
                    })
            }
        }
    }

    /// Zero out the restaurants in `zeroed` and move their combined mass
    /// onto the rest: in proportion to surviving entries when any survive
    /// with positive mass, evenly when the survivors held none.
    ///
    /// Errors with [`Error::DegenerateSupport`] when `zeroed` covers every
    /// restaurant; callers apply their protocol-specific fallback.
    pub fn zero_and_redistribute(
        &self,
        zeroed: &RestaurantSet,
        mode: RevisionMode,
    ) -> Result<Self> {
        let n = self.len();
        debug_assert_eq!(zeroed.universe(), n);
        if zeroed.len() >= n {
            return Err(Error::DegenerateSupport);
        }
        let survivors = n - zeroed.len();

        let mut removed = 0.0;
        let mut surviving_mass = 0.0;
        for j in 0..n {
            let p = self.entry(j);
            if zeroed.contains(j) {
                removed += p;
            } else {
                surviving_mass += p;
            }
        }

        let mut out = vec![0.0; n];
        if surviving_mass == 0.0 {
            // The survivors held nothing: spread the whole mass evenly.
            let share = 1.0 / survivors as f64;
            for (j, slot) in out.iter_mut().enumerate() {
                if !zeroed.contains(j) {
                    *slot = share;
                }
            }
            return Ok(Self::canonical(out));
        }

        match mode {
            RevisionMode::MassPreserving => {
                for (j, slot) in out.iter_mut().enumerate() {
                    if !zeroed.contains(j) {
                        *slot = self.entry(j) / surviving_mass;
                    }
                }
                Ok(Self::canonical(out))
            }
            RevisionMode::LiteralEquations => {
                let denom = if 1.0 - removed > 0.0 {
                    1.0 - removed
                } else {
                    surviving_mass
                };
                let mut total = 0.0;
                for (j, slot) in out.iter_mut().enumerate() {
                    if !zeroed.contains(j) {
                        let p = self.entry(j);
                        let w = p * (1.0 + removed * p / denom);
                        *slot = w;
                        total += w;
                    }
                }
                Ok(Self::normalized_dense(out, total))
            }
        }
    }
}

/// Set of restaurant ids within a fixed universe `0..n`.
///
/// Constant-time membership plus a cached cardinality; protocol views and
/// reported idle sets are all carried in this form.
#[derive(Clone, Debug, PartialEq)]
pub struct RestaurantSet {
    member: Vec<bool>,
    count: usize,
}

impl RestaurantSet {
    pub fn empty(n: usize) -> Self {
        RestaurantSet {
            member: vec![false; n],
            count: 0,
        }
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(n: usize, ids: I) -> Self {
        let mut set = RestaurantSet::empty(n);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn insert(&mut self, id: usize) {
        if !self.member[id] {
            self.member[id] = true;
            self.count += 1;
        }
    }

    pub fn contains(&self, id: usize) -> bool {
        self.member[id]
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Size of the universe the set lives in.
    pub fn universe(&self) -> usize {
        self.member.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter_map(|(j, &m)| m.then_some(j))
    }
}
