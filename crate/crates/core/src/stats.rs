//! Operation counters.
//!
//! Counter definitions (these are the regression baselines):
//!
//! * `ge_calls` - every invocation of the `>=` relation, recursive ones included.
//! * `plus_evals` / `times_evals` - every construction of a definitional sum or
//!   product form. Memo table hits do not count.
//! * `select_steps` - one per tree level walked while locating a memo table cell.
//! * `table_hits` - lookups that found an already filled memo cell.
//! * `nodes_built` - genealogy nodes constructed.

use std::cell::Cell;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SurrealError};

/// A point-in-time copy of the counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Stats {
    pub ge_calls: u64,
    pub plus_evals: u64,
    pub times_evals: u64,
    pub select_steps: u64,
    pub table_hits: u64,
    pub nodes_built: u64,
}

impl Stats {
    /// Counter-wise difference `self - earlier`.
    pub fn since(&self, earlier: &Stats) -> Stats {
        Stats {
            ge_calls: self.ge_calls - earlier.ge_calls,
            plus_evals: self.plus_evals - earlier.plus_evals,
            times_evals: self.times_evals - earlier.times_evals,
            select_steps: self.select_steps - earlier.select_steps,
            table_hits: self.table_hits - earlier.table_hits,
            nodes_built: self.nodes_built - earlier.nodes_built,
        }
    }
}

impl std::fmt::Display for Stats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "geCalls={} plusEvals={} timesEvals={} selectSteps={} tableHits={} nodesBuilt={}",
            self.ge_calls,
            self.plus_evals,
            self.times_evals,
            self.select_steps,
            self.table_hits,
            self.nodes_built
        )
    }
}

const DEADLINE_CHECK_INTERVAL: u64 = 1024;

/// Single-threaded counter sink, optionally carrying a wall-clock deadline
/// that long-running evaluations poll.
#[derive(Debug, Default)]
pub struct Counters {
    ge_calls: Cell<u64>,
    plus_evals: Cell<u64>,
    times_evals: Cell<u64>,
    select_steps: Cell<u64>,
    table_hits: Cell<u64>,
    deadline: Cell<Option<Instant>>,
}

fn bump(c: &Cell<u64>, by: u64) {
    c.set(c.get() + by);
}

impl Counters {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn ge_call(&self) -> Result<()> {
        self.count(&self.ge_calls)
    }

    pub(crate) fn plus_eval(&self) -> Result<()> {
        self.count(&self.plus_evals)
    }

    pub(crate) fn times_eval(&self) -> Result<()> {
        self.count(&self.times_evals)
    }

    pub(crate) fn select_steps(&self, n: u64) {
        bump(&self.select_steps, n);
    }

    pub(crate) fn table_hit(&self) {
        bump(&self.table_hits, 1);
    }

    pub fn set_deadline(&self, deadline: Option<Instant>) {
        self.deadline.set(deadline);
    }

    /// Bumps `c` and polls the deadline every `DEADLINE_CHECK_INTERVAL` counts.
    #[inline]
    fn count(&self, c: &Cell<u64>) -> Result<()> {
        let n = c.get() + 1;
        c.set(n);
        if n.is_multiple_of(DEADLINE_CHECK_INTERVAL) {
            self.check_deadline()
        } else {
            Ok(())
        }
    }

    #[cold]
    fn check_deadline(&self) -> Result<()> {
        match self.deadline.get() {
            Some(deadline) if Instant::now() >= deadline => Err(SurrealError::Timeout),
            _ => Ok(()),
        }
    }

    /// Snapshot without `nodes_built`, which the genealogy tree owns.
    pub fn snapshot(&self) -> Stats {
        Stats {
            ge_calls: self.ge_calls.get(),
            plus_evals: self.plus_evals.get(),
            times_evals: self.times_evals.get(),
            select_steps: self.select_steps.get(),
            table_hits: self.table_hits.get(),
            nodes_built: 0,
        }
    }

    pub fn reset(&self) {
        for c in [
            &self.ge_calls,
            &self.plus_evals,
            &self.times_evals,
            &self.select_steps,
            &self.table_hits,
        ] {
            c.set(0);
        }
    }
}
