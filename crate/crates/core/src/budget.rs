//! Resource budgets for exhaustive searches. Exceeding a budget is a result
//! ("inconclusive"), never an error.

use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn with_max_nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }

    pub fn with_time_limit(seconds: f64) -> Self {
        SearchBudget {
            max_nodes: None,
            time_limit: Some(Duration::from_secs_f64(seconds)),
        }
    }

    pub fn exhausted(&self, nodes: u64, start: &Instant) -> bool {
        if let Some(max) = self.max_nodes {
            if nodes > max {
                return true;
            }
        }
        if let Some(limit) = self.time_limit {
            // check the clock sparsely; node counts advance every call
            if nodes.is_multiple_of(1024) && start.elapsed() > limit {
                return true;
            }
        }
        false
    }
}
