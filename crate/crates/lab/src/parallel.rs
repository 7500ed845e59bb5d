//! Multi-threaded atom sieving.
//!
//! Segments are marked on a rayon pool and collected in index order, so the
//! finished sieve is identical for every thread count.

use acm_core::{Acm, AtomSieve, SieveLimits, SievePlan};
use rayon::prelude::*;

use crate::error::{LabError, Result};

/// Environment variable consulted when no explicit thread count is given.
pub const THREADS_ENV: &str = "ACM_THREADS";

/// Explicit count, else `ACM_THREADS`, else the available parallelism.
pub fn resolve_threads(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn sieve(acm: Acm, limit: u64, limits: &SieveLimits, threads: usize) -> Result<AtomSieve> {
    let plan = SievePlan::new(acm, limit, limits)?;
    let segments = plan.segments();
    if threads <= 1 || segments.len() <= 1 {
        return Ok(plan.run());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| LabError::Usage(format!("cannot start {threads} threads: {e}")))?;
    let parts: Vec<_> = pool.install(|| segments.into_par_iter().map(|r| plan.mark(r)).collect());
    Ok(plan.assemble(parts)?)
}
