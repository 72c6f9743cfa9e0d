//! Process-wide enumeration bounds.
//!
//! Every enumeration checks its input sizes against these bounds and raises
//! [`Error::BoundExceeded`] instead of truncating. The CLI overrides them
//! through `--budget`.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_GAMMA: usize = 24;
pub const DEFAULT_MAX_ORDER: usize = 128;
pub const DEFAULT_MAX_AUT: usize = 2048;
pub const DEFAULT_MAX_NODES: usize = 20_000_000;

static MAX_GAMMA: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_GAMMA);
static MAX_ORDER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ORDER);
static MAX_AUT: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_AUT);
static MAX_NODES: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_NODES);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Bound on the order of an acting group.
    pub max_gamma: usize,
    /// Bound on the order of a coefficient group (also the automorphism
    /// enumeration bound on |G|).
    pub max_order: usize,
    /// Bound on the order of an enumerated automorphism group.
    pub max_aut: usize,
    /// Bound on visited nodes in a single backtracking search.
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_gamma: DEFAULT_MAX_GAMMA,
            max_order: DEFAULT_MAX_ORDER,
            max_aut: DEFAULT_MAX_AUT,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

pub fn current() -> Budget {
    Budget {
        max_gamma: MAX_GAMMA.load(Ordering::Relaxed),
        max_order: MAX_ORDER.load(Ordering::Relaxed),
        max_aut: MAX_AUT.load(Ordering::Relaxed),
        max_nodes: MAX_NODES.load(Ordering::Relaxed),
    }
}

pub fn set(b: Budget) {
    MAX_GAMMA.store(b.max_gamma, Ordering::Relaxed);
    MAX_ORDER.store(b.max_order, Ordering::Relaxed);
    MAX_AUT.store(b.max_aut, Ordering::Relaxed);
    MAX_NODES.store(b.max_nodes, Ordering::Relaxed);
}

pub(crate) fn check(what: &str, actual: usize, bound: usize) -> Result<()> {
    if actual > bound {
        Err(Error::BoundExceeded { what: what.to_string(), actual, bound })
    } else {
        Ok(())
    }
}

pub(crate) fn check_gamma(order: usize) -> Result<()> {
    check("|gamma|", order, current().max_gamma)
}

pub(crate) fn check_target(order: usize) -> Result<()> {
    check("|target|", order, current().max_order)
}

/// Node counter for backtracking searches; shareable across worker threads.
pub(crate) struct NodeCounter {
    visited: AtomicUsize,
    bound: usize,
}

impl NodeCounter {
    pub(crate) fn new() -> Self {
        NodeCounter { visited: AtomicUsize::new(0), bound: current().max_nodes }
    }

    pub(crate) fn tick(&self) -> Result<()> {
        let v = self.visited.fetch_add(1, Ordering::Relaxed) + 1;
        check("search nodes", v, self.bound)
    }
}
