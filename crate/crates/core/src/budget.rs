//! Search budgets shared by every exhaustive or bounded procedure.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Budget {
    /// Cap on vectors (or candidates) examined by one search.
    pub max_vectors: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_vectors: 100_000_000 }
    }
}

impl Budget {
    pub fn new(max_vectors: u64) -> Self {
        Budget { max_vectors }
    }

    /// Error unless a search space of `size` fits.
    pub fn admit(&self, size: Option<u64>, what: &str) -> Result<u64> {
        match size {
            Some(n) if n <= self.max_vectors => Ok(n),
            _ => Err(Error::BudgetExceeded(format!(
                "{what}: search space exceeds {} vectors",
                self.max_vectors
            ))),
        }
    }
}

/// A shared counter for searches whose size is not known up front.
#[derive(Debug)]
pub struct Meter {
    used: AtomicU64,
    limit: u64,
}

impl Meter {
    pub fn new(budget: &Budget) -> Self {
        Meter { used: AtomicU64::new(0), limit: budget.max_vectors }
    }

    pub fn charge(&self, n: u64, what: &str) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.limit {
            Err(Error::BudgetExceeded(format!("{what}: more than {} candidates", self.limit)))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}
