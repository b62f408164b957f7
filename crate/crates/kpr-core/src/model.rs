//! Customers and the per-period service outcome.

use crate::vector::ProbabilityVector;

/// One agent: her strategy vector plus the service bookkeeping the two
/// loyalty variants need.
#[derive(Clone, Debug)]
pub struct CustomerState {
    pub id: usize,
    pub vector: ProbabilityVector,
    /// Pre-stabilization vector kept while the customer sits stabilized on
    /// a restaurant that keeps serving her; restored the period she is
    /// bumped.
    pub saved_copy: Option<ProbabilityVector>,
    pub served_current: bool,
    pub served_previous: bool,
    pub last_choice: Option<usize>,
}

impl CustomerState {
    pub fn new(id: usize, vector: ProbabilityVector) -> Self {
        CustomerState {
            id,
            vector,
            saved_copy: None,
            served_current: false,
            served_previous: false,
            last_choice: None,
        }
    }
}

/// Resolution of one period: who went where and who got served.
///
/// A restaurant is idle exactly when it had no visitors, so the idle set
/// is derived from `served` rather than stored.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodOutcome {
    /// choices[i] = restaurant customer i visited this period.
    pub choices: Vec<usize>,
    /// served[r] = customer served by restaurant r, if it had visitors.
    pub served: Vec<Option<usize>>,
}

impl PeriodOutcome {
    /// Number of restaurants (= number of customers).
    pub fn n(&self) -> usize {
        self.served.len()
    }

    pub fn is_idle(&self, r: usize) -> bool {
        self.served[r].is_none()
    }

    pub fn idle_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.served
            .iter()
            .enumerate()
            .filter_map(|(r, s)| s.is_none().then_some(r))
    }

    /// idle[r] flags, in the form the noisy reporting consumes.
    pub fn idle_flags(&self) -> Vec<bool> {
        self.served.iter().map(|s| s.is_none()).collect()
    }

    pub fn idle_count(&self) -> usize {
        self.served.iter().filter(|s| s.is_none()).count()
    }

    pub fn served_count(&self) -> usize {
        self.n() - self.idle_count()
    }

    /// Whether customer `i` was the one served where she went.
    pub fn was_served(&self, i: usize) -> bool {
        self.served[self.choices[i]] == Some(i)
    }
}
