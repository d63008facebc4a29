use crate::error::{Error, Result};

pub const DEFAULT_CAPACITY: usize = 20;
pub const CAPACITY_ENV: &str = "QUORUMLACE_CAPACITY";

/// Largest universe accepted by exhaustive subset enumeration.
pub fn capacity_bound() -> usize {
    std::env::var(CAPACITY_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAPACITY)
}

pub fn ensure_within(size: usize, bound: usize) -> Result<()> {
    if size > bound {
        Err(Error::Capacity { size, bound })
    } else {
        Ok(())
    }
}
