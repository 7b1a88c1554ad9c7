//! Cancellation hook for the exponential searches.

use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Deadline and node budget consulted by exhaustive searches.
///
/// The default budget is unlimited. Each search calls [`Budget::tick`] once per
/// visited node; exceeding either limit turns into [`Error::Inconclusive`].
#[derive(Debug, Clone, Default)]
pub struct Budget {
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
    nodes: Cell<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Self {
            deadline: Some(Instant::now() + timeout),
            ..Self::default()
        }
    }

    pub fn with_max_nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: Some(max_nodes),
            ..Self::default()
        }
    }

    pub fn and_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.get()
    }

    #[inline]
    pub fn tick(&self) -> Result<()> {
        let n = self.nodes.get() + 1;
        self.nodes.set(n);
        if let Some(max) = self.max_nodes {
            if n > max {
                return Err(Error::Inconclusive(format!("node budget of {max} exhausted")));
            }
        }
        // Checking the clock on every node is too slow.
        if n & 0x3ff == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(Error::Inconclusive("deadline reached".into()));
                }
            }
        }
        Ok(())
    }
}
