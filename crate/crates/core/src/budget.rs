use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_SUBSETS: u64 = 10_000_000;
pub const DEFAULT_SEARCH_NODES: u64 = 20_000_000_000;

/// Environment variable overriding [`DEFAULT_VERTEX_SUBSETS`].
pub const BUDGET_ENV: &str = "MAGIC_BUDGET";

/// Work limits for the two searches that can blow up: active-set
/// combinations during vertex enumeration and DFS nodes during labeling
/// enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub vertex_subsets: u64,
    pub search_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            vertex_subsets: DEFAULT_VERTEX_SUBSETS,
            search_nodes: DEFAULT_SEARCH_NODES,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            vertex_subsets: u64::MAX,
            search_nodes: u64::MAX,
        }
    }

    /// Defaults, with the vertex-subset budget taken from `MAGIC_BUDGET` when
    /// it is set to an integer.
    pub fn from_env() -> Self {
        let mut budget = Budget::default();
        if let Some(v) = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            budget.vertex_subsets = v;
        }
        budget
    }
}

/// Shared DFS node counter. Workers count locally and flush in batches.
pub(crate) struct NodeMeter {
    used: AtomicU64,
    limit: u64,
}

pub(crate) const FLUSH_EVERY: u64 = 4096;

impl NodeMeter {
    pub(crate) fn new(limit: u64) -> Self {
        NodeMeter {
            used: AtomicU64::new(0),
            limit,
        }
    }

    pub(crate) fn charge(&self, nodes: u64) -> Result<()> {
        let total = self.used.fetch_add(nodes, Ordering::Relaxed).saturating_add(nodes);
        if total > self.limit {
            return Err(Error::BudgetExceeded {
                what: "labeling search",
                required: format!("more than {} nodes", self.limit),
                budget: self.limit,
            });
        }
        Ok(())
    }
}
