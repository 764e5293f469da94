//! Node budgets for enumerations that grow super-exponentially.

use thiserror::Error;

/// Default node budget for enumerations.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("budget of {limit} nodes exhausted")]
pub struct BudgetExceeded {
    pub limit: u64,
}

/// A countdown of search nodes. Every expanded node calls [`Budget::tick`].
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.used += 1;
        if self.used > self.limit {
            Err(BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODE_BUDGET)
    }
}
